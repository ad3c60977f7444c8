#include "sink.h"

int step_a(int x) {
  int acc = x;
  acc = (acc ^ 3) * 3 + (x >> 1);
  acc = (acc ^ 10) * 5 + (x >> 2);
  acc = (acc ^ 17) * 7 + (x >> 3);
  acc = (acc ^ 24) * 9 + (x >> 4);
  acc = (acc ^ 31) * 11 + (x >> 5);
  acc = (acc ^ 38) * 13 + (x >> 1);
  acc = (acc ^ 45) * 15 + (x >> 2);
  acc = (acc ^ 52) * 17 + (x >> 3);
  acc = (acc ^ 59) * 19 + (x >> 4);
  acc = (acc ^ 66) * 21 + (x >> 5);
  acc = (acc ^ 73) * 23 + (x >> 1);
  acc = (acc ^ 80) * 25 + (x >> 2);
  acc = (acc ^ 87) * 27 + (x >> 3);
  acc = (acc ^ 94) * 29 + (x >> 4);
  acc = (acc ^ 101) * 31 + (x >> 5);
  acc = (acc ^ 108) * 33 + (x >> 1);
  acc = (acc ^ 115) * 35 + (x >> 2);
  acc = (acc ^ 122) * 37 + (x >> 3);
  acc = (acc ^ 129) * 39 + (x >> 4);
  acc = (acc ^ 136) * 41 + (x >> 5);
  acc = (acc ^ 143) * 43 + (x >> 1);
  acc = (acc ^ 150) * 45 + (x >> 2);
  acc = (acc ^ 157) * 47 + (x >> 3);
  acc = (acc ^ 164) * 49 + (x >> 4);
  acc = (acc ^ 171) * 51 + (x >> 5);
  acc = (acc ^ 178) * 53 + (x >> 1);
  acc = (acc ^ 185) * 55 + (x >> 2);
  acc = (acc ^ 192) * 57 + (x >> 3);
  acc = (acc ^ 199) * 59 + (x >> 4);
  acc = (acc ^ 206) * 61 + (x >> 5);
  acc = (acc ^ 213) * 63 + (x >> 1);
  acc = (acc ^ 220) * 65 + (x >> 2);
  acc = (acc ^ 227) * 67 + (x >> 3);
  acc = (acc ^ 234) * 69 + (x >> 4);
  acc = (acc ^ 241) * 71 + (x >> 5);
  acc = (acc ^ 248) * 73 + (x >> 1);
  acc = (acc ^ 255) * 75 + (x >> 2);
  acc = (acc ^ 262) * 77 + (x >> 3);
  acc = (acc ^ 269) * 79 + (x >> 4);
  acc = (acc ^ 276) * 81 + (x >> 5);
  return acc;
}

int step_b(int x) {
  int acc = x;
  acc = (acc ^ 3) * 3 + (x >> 1);
  acc = (acc ^ 10) * 5 + (x >> 2);
  acc = (acc ^ 17) * 7 + (x >> 3);
  acc = (acc ^ 24) * 9 + (x >> 4);
  acc = (acc ^ 31) * 11 + (x >> 5);
  acc = (acc ^ 38) * 13 + (x >> 1);
  acc = (acc ^ 45) * 15 + (x >> 2);
  acc = (acc ^ 52) * 17 + (x >> 3);
  acc = (acc ^ 59) * 19 + (x >> 4);
  acc = (acc ^ 66) * 21 + (x >> 5);
  acc = (acc ^ 73) * 23 + (x >> 1);
  acc = (acc ^ 80) * 25 + (x >> 2);
  acc = (acc ^ 87) * 27 + (x >> 3);
  acc = (acc ^ 94) * 29 + (x >> 4);
  acc = (acc ^ 101) * 31 + (x >> 5);
  acc = (acc ^ 108) * 33 + (x >> 1);
  acc = (acc ^ 115) * 35 + (x >> 2);
  acc = (acc ^ 122) * 37 + (x >> 3);
  acc = (acc ^ 129) * 39 + (x >> 4);
  acc = (acc ^ 136) * 41 + (x >> 5);
  acc = (acc ^ 143) * 43 + (x >> 1);
  acc = (acc ^ 150) * 45 + (x >> 2);
  acc = (acc ^ 157) * 47 + (x >> 3);
  acc = (acc ^ 164) * 49 + (x >> 4);
  acc = (acc ^ 171) * 51 + (x >> 5);
  acc = (acc ^ 178) * 53 + (x >> 1);
  acc = (acc ^ 185) * 55 + (x >> 2);
  acc = (acc ^ 192) * 57 + (x >> 3);
  acc = (acc ^ 199) * 59 + (x >> 4);
  acc = (acc ^ 206) * 61 + (x >> 5);
  acc = (acc ^ 213) * 63 + (x >> 1);
  acc = (acc ^ 220) * 65 + (x >> 2);
  acc = (acc ^ 227) * 67 + (x >> 3);
  acc = (acc ^ 234) * 69 + (x >> 4);
  acc = (acc ^ 241) * 71 + (x >> 5);
  acc = (acc ^ 248) * 73 + (x >> 1);
  acc = (acc ^ 255) * 75 + (x >> 2);
  acc = (acc ^ 262) * 77 + (x >> 3);
  acc = (acc ^ 269) * 79 + (x >> 4);
  acc = (acc ^ 276) * 81 + (x >> 5);
  acc = (acc ^ 283) * 83 + (x >> 1);
  acc = (acc ^ 290) * 85 + (x >> 2);
  acc = (acc ^ 297) * 87 + (x >> 3);
  acc = (acc ^ 304) * 89 + (x >> 4);
  acc = (acc ^ 311) * 91 + (x >> 5);
  acc = (acc ^ 318) * 93 + (x >> 1);
  acc = (acc ^ 325) * 95 + (x >> 2);
  acc = (acc ^ 332) * 97 + (x >> 3);
  acc = (acc ^ 339) * 99 + (x >> 4);
  acc = (acc ^ 346) * 101 + (x >> 5);
  acc = (acc ^ 353) * 103 + (x >> 1);
  acc = (acc ^ 360) * 105 + (x >> 2);
  acc = (acc ^ 367) * 107 + (x >> 3);
  acc = (acc ^ 374) * 109 + (x >> 4);
  acc = (acc ^ 381) * 111 + (x >> 5);
  acc = (acc ^ 388) * 113 + (x >> 1);
  acc = (acc ^ 395) * 115 + (x >> 2);
  acc = (acc ^ 402) * 117 + (x >> 3);
  acc = (acc ^ 409) * 119 + (x >> 4);
  acc = (acc ^ 416) * 121 + (x >> 5);
  acc = (acc ^ 423) * 123 + (x >> 1);
  acc = (acc ^ 430) * 125 + (x >> 2);
  acc = (acc ^ 437) * 127 + (x >> 3);
  acc = (acc ^ 444) * 129 + (x >> 4);
  acc = (acc ^ 451) * 131 + (x >> 5);
  acc = (acc ^ 458) * 133 + (x >> 1);
  acc = (acc ^ 465) * 135 + (x >> 2);
  acc = (acc ^ 472) * 137 + (x >> 3);
  acc = (acc ^ 479) * 139 + (x >> 4);
  acc = (acc ^ 486) * 141 + (x >> 5);
  acc = (acc ^ 493) * 143 + (x >> 1);
  acc = (acc ^ 500) * 145 + (x >> 2);
  acc = (acc ^ 507) * 147 + (x >> 3);
  acc = (acc ^ 514) * 149 + (x >> 4);
  acc = (acc ^ 521) * 151 + (x >> 5);
  acc = (acc ^ 528) * 153 + (x >> 1);
  acc = (acc ^ 535) * 155 + (x >> 2);
  acc = (acc ^ 542) * 157 + (x >> 3);
  acc = (acc ^ 549) * 159 + (x >> 4);
  acc = (acc ^ 556) * 161 + (x >> 5);
  return acc;
}

int step_c(int x) {
  int acc = x;
  acc = (acc ^ 3) * 3 + (x >> 1);
  acc = (acc ^ 10) * 5 + (x >> 2);
  acc = (acc ^ 17) * 7 + (x >> 3);
  acc = (acc ^ 24) * 9 + (x >> 4);
  acc = (acc ^ 31) * 11 + (x >> 5);
  acc = (acc ^ 38) * 13 + (x >> 1);
  acc = (acc ^ 45) * 15 + (x >> 2);
  acc = (acc ^ 52) * 17 + (x >> 3);
  acc = (acc ^ 59) * 19 + (x >> 4);
  acc = (acc ^ 66) * 21 + (x >> 5);
  acc = (acc ^ 73) * 23 + (x >> 1);
  acc = (acc ^ 80) * 25 + (x >> 2);
  acc = (acc ^ 87) * 27 + (x >> 3);
  acc = (acc ^ 94) * 29 + (x >> 4);
  acc = (acc ^ 101) * 31 + (x >> 5);
  acc = (acc ^ 108) * 33 + (x >> 1);
  acc = (acc ^ 115) * 35 + (x >> 2);
  acc = (acc ^ 122) * 37 + (x >> 3);
  acc = (acc ^ 129) * 39 + (x >> 4);
  acc = (acc ^ 136) * 41 + (x >> 5);
  acc = (acc ^ 143) * 43 + (x >> 1);
  acc = (acc ^ 150) * 45 + (x >> 2);
  acc = (acc ^ 157) * 47 + (x >> 3);
  acc = (acc ^ 164) * 49 + (x >> 4);
  acc = (acc ^ 171) * 51 + (x >> 5);
  acc = (acc ^ 178) * 53 + (x >> 1);
  acc = (acc ^ 185) * 55 + (x >> 2);
  acc = (acc ^ 192) * 57 + (x >> 3);
  acc = (acc ^ 199) * 59 + (x >> 4);
  acc = (acc ^ 206) * 61 + (x >> 5);
  acc = (acc ^ 213) * 63 + (x >> 1);
  acc = (acc ^ 220) * 65 + (x >> 2);
  acc = (acc ^ 227) * 67 + (x >> 3);
  acc = (acc ^ 234) * 69 + (x >> 4);
  acc = (acc ^ 241) * 71 + (x >> 5);
  acc = (acc ^ 248) * 73 + (x >> 1);
  acc = (acc ^ 255) * 75 + (x >> 2);
  acc = (acc ^ 262) * 77 + (x >> 3);
  acc = (acc ^ 269) * 79 + (x >> 4);
  acc = (acc ^ 276) * 81 + (x >> 5);
  acc = (acc ^ 283) * 83 + (x >> 1);
  acc = (acc ^ 290) * 85 + (x >> 2);
  acc = (acc ^ 297) * 87 + (x >> 3);
  acc = (acc ^ 304) * 89 + (x >> 4);
  acc = (acc ^ 311) * 91 + (x >> 5);
  acc = (acc ^ 318) * 93 + (x >> 1);
  acc = (acc ^ 325) * 95 + (x >> 2);
  acc = (acc ^ 332) * 97 + (x >> 3);
  acc = (acc ^ 339) * 99 + (x >> 4);
  acc = (acc ^ 346) * 101 + (x >> 5);
  acc = (acc ^ 353) * 103 + (x >> 1);
  acc = (acc ^ 360) * 105 + (x >> 2);
  acc = (acc ^ 367) * 107 + (x >> 3);
  acc = (acc ^ 374) * 109 + (x >> 4);
  acc = (acc ^ 381) * 111 + (x >> 5);
  acc = (acc ^ 388) * 113 + (x >> 1);
  acc = (acc ^ 395) * 115 + (x >> 2);
  acc = (acc ^ 402) * 117 + (x >> 3);
  acc = (acc ^ 409) * 119 + (x >> 4);
  acc = (acc ^ 416) * 121 + (x >> 5);
  acc = (acc ^ 423) * 123 + (x >> 1);
  acc = (acc ^ 430) * 125 + (x >> 2);
  acc = (acc ^ 437) * 127 + (x >> 3);
  acc = (acc ^ 444) * 129 + (x >> 4);
  acc = (acc ^ 451) * 131 + (x >> 5);
  acc = (acc ^ 458) * 133 + (x >> 1);
  acc = (acc ^ 465) * 135 + (x >> 2);
  acc = (acc ^ 472) * 137 + (x >> 3);
  acc = (acc ^ 479) * 139 + (x >> 4);
  acc = (acc ^ 486) * 141 + (x >> 5);
  acc = (acc ^ 493) * 143 + (x >> 1);
  acc = (acc ^ 500) * 145 + (x >> 2);
  acc = (acc ^ 507) * 147 + (x >> 3);
  acc = (acc ^ 514) * 149 + (x >> 4);
  acc = (acc ^ 521) * 151 + (x >> 5);
  acc = (acc ^ 528) * 153 + (x >> 1);
  acc = (acc ^ 535) * 155 + (x >> 2);
  acc = (acc ^ 542) * 157 + (x >> 3);
  acc = (acc ^ 549) * 159 + (x >> 4);
  acc = (acc ^ 556) * 161 + (x >> 5);
  acc = (acc ^ 563) * 163 + (x >> 1);
  acc = (acc ^ 570) * 165 + (x >> 2);
  acc = (acc ^ 577) * 167 + (x >> 3);
  acc = (acc ^ 584) * 169 + (x >> 4);
  acc = (acc ^ 591) * 171 + (x >> 5);
  acc = (acc ^ 598) * 173 + (x >> 1);
  acc = (acc ^ 605) * 175 + (x >> 2);
  acc = (acc ^ 612) * 177 + (x >> 3);
  acc = (acc ^ 619) * 179 + (x >> 4);
  acc = (acc ^ 626) * 181 + (x >> 5);
  acc = (acc ^ 633) * 183 + (x >> 1);
  acc = (acc ^ 640) * 185 + (x >> 2);
  acc = (acc ^ 647) * 187 + (x >> 3);
  acc = (acc ^ 654) * 189 + (x >> 4);
  acc = (acc ^ 661) * 191 + (x >> 5);
  acc = (acc ^ 668) * 193 + (x >> 1);
  acc = (acc ^ 675) * 195 + (x >> 2);
  acc = (acc ^ 682) * 197 + (x >> 3);
  acc = (acc ^ 689) * 199 + (x >> 4);
  acc = (acc ^ 696) * 201 + (x >> 5);
  acc = (acc ^ 703) * 203 + (x >> 1);
  acc = (acc ^ 710) * 205 + (x >> 2);
  acc = (acc ^ 717) * 207 + (x >> 3);
  acc = (acc ^ 724) * 209 + (x >> 4);
  acc = (acc ^ 731) * 211 + (x >> 5);
  acc = (acc ^ 738) * 213 + (x >> 1);
  acc = (acc ^ 745) * 215 + (x >> 2);
  acc = (acc ^ 752) * 217 + (x >> 3);
  acc = (acc ^ 759) * 219 + (x >> 4);
  acc = (acc ^ 766) * 221 + (x >> 5);
  acc = (acc ^ 773) * 223 + (x >> 1);
  acc = (acc ^ 780) * 225 + (x >> 2);
  acc = (acc ^ 787) * 227 + (x >> 3);
  acc = (acc ^ 794) * 229 + (x >> 4);
  acc = (acc ^ 801) * 231 + (x >> 5);
  acc = (acc ^ 808) * 233 + (x >> 1);
  acc = (acc ^ 815) * 235 + (x >> 2);
  acc = (acc ^ 822) * 237 + (x >> 3);
  acc = (acc ^ 829) * 239 + (x >> 4);
  acc = (acc ^ 836) * 241 + (x >> 5);
  acc = (acc ^ 843) * 243 + (x >> 1);
  acc = (acc ^ 850) * 245 + (x >> 2);
  acc = (acc ^ 857) * 247 + (x >> 3);
  acc = (acc ^ 864) * 249 + (x >> 4);
  acc = (acc ^ 871) * 251 + (x >> 5);
  acc = (acc ^ 878) * 253 + (x >> 1);
  acc = (acc ^ 885) * 255 + (x >> 2);
  acc = (acc ^ 892) * 257 + (x >> 3);
  acc = (acc ^ 899) * 259 + (x >> 4);
  acc = (acc ^ 906) * 261 + (x >> 5);
  return acc;
}

int step_d(int x) {
  int acc = x;
  acc = (acc ^ 3) * 3 + (x >> 1);
  acc = (acc ^ 10) * 5 + (x >> 2);
  acc = (acc ^ 17) * 7 + (x >> 3);
  acc = (acc ^ 24) * 9 + (x >> 4);
  acc = (acc ^ 31) * 11 + (x >> 5);
  acc = (acc ^ 38) * 13 + (x >> 1);
  acc = (acc ^ 45) * 15 + (x >> 2);
  acc = (acc ^ 52) * 17 + (x >> 3);
  acc = (acc ^ 59) * 19 + (x >> 4);
  acc = (acc ^ 66) * 21 + (x >> 5);
  acc = (acc ^ 73) * 23 + (x >> 1);
  acc = (acc ^ 80) * 25 + (x >> 2);
  acc = (acc ^ 87) * 27 + (x >> 3);
  acc = (acc ^ 94) * 29 + (x >> 4);
  acc = (acc ^ 101) * 31 + (x >> 5);
  acc = (acc ^ 108) * 33 + (x >> 1);
  acc = (acc ^ 115) * 35 + (x >> 2);
  acc = (acc ^ 122) * 37 + (x >> 3);
  acc = (acc ^ 129) * 39 + (x >> 4);
  acc = (acc ^ 136) * 41 + (x >> 5);
  acc += sink(acc + 0);
  acc += sink(acc + 1);
  acc += sink(acc + 2);
  acc += sink(acc + 3);
  acc += sink(acc + 4);
  acc += sink(acc + 5);
  acc += sink(acc + 6);
  acc += sink(acc + 7);
  acc += sink(acc + 8);
  acc += sink(acc + 9);
  acc += sink(acc + 10);
  acc += sink(acc + 11);
  acc += sink(acc + 12);
  acc += sink(acc + 13);
  return acc;
}

int step_e(int x) {
  int acc = x;
  acc = (acc ^ 3) * 3 + (x >> 1);
  acc = (acc ^ 10) * 5 + (x >> 2);
  acc = (acc ^ 17) * 7 + (x >> 3);
  acc = (acc ^ 24) * 9 + (x >> 4);
  acc = (acc ^ 31) * 11 + (x >> 5);
  acc = (acc ^ 38) * 13 + (x >> 1);
  acc = (acc ^ 45) * 15 + (x >> 2);
  acc = (acc ^ 52) * 17 + (x >> 3);
  acc = (acc ^ 59) * 19 + (x >> 4);
  acc = (acc ^ 66) * 21 + (x >> 5);
  acc = (acc ^ 73) * 23 + (x >> 1);
  acc = (acc ^ 80) * 25 + (x >> 2);
  acc = (acc ^ 87) * 27 + (x >> 3);
  acc = (acc ^ 94) * 29 + (x >> 4);
  acc = (acc ^ 101) * 31 + (x >> 5);
  acc = (acc ^ 108) * 33 + (x >> 1);
  acc = (acc ^ 115) * 35 + (x >> 2);
  acc = (acc ^ 122) * 37 + (x >> 3);
  acc = (acc ^ 129) * 39 + (x >> 4);
  acc = (acc ^ 136) * 41 + (x >> 5);
  acc = (acc ^ 143) * 43 + (x >> 1);
  acc = (acc ^ 150) * 45 + (x >> 2);
  acc = (acc ^ 157) * 47 + (x >> 3);
  acc = (acc ^ 164) * 49 + (x >> 4);
  acc = (acc ^ 171) * 51 + (x >> 5);
  acc = (acc ^ 178) * 53 + (x >> 1);
  acc = (acc ^ 185) * 55 + (x >> 2);
  acc = (acc ^ 192) * 57 + (x >> 3);
  acc = (acc ^ 199) * 59 + (x >> 4);
  acc = (acc ^ 206) * 61 + (x >> 5);
  acc = (acc ^ 213) * 63 + (x >> 1);
  acc = (acc ^ 220) * 65 + (x >> 2);
  acc = (acc ^ 227) * 67 + (x >> 3);
  acc = (acc ^ 234) * 69 + (x >> 4);
  acc = (acc ^ 241) * 71 + (x >> 5);
  acc = (acc ^ 248) * 73 + (x >> 1);
  acc = (acc ^ 255) * 75 + (x >> 2);
  acc = (acc ^ 262) * 77 + (x >> 3);
  acc = (acc ^ 269) * 79 + (x >> 4);
  acc = (acc ^ 276) * 81 + (x >> 5);
  acc = (acc ^ 283) * 83 + (x >> 1);
  acc = (acc ^ 290) * 85 + (x >> 2);
  acc = (acc ^ 297) * 87 + (x >> 3);
  acc = (acc ^ 304) * 89 + (x >> 4);
  acc = (acc ^ 311) * 91 + (x >> 5);
  acc = (acc ^ 318) * 93 + (x >> 1);
  acc = (acc ^ 325) * 95 + (x >> 2);
  acc = (acc ^ 332) * 97 + (x >> 3);
  acc = (acc ^ 339) * 99 + (x >> 4);
  acc = (acc ^ 346) * 101 + (x >> 5);
  acc = (acc ^ 353) * 103 + (x >> 1);
  acc = (acc ^ 360) * 105 + (x >> 2);
  acc = (acc ^ 367) * 107 + (x >> 3);
  acc = (acc ^ 374) * 109 + (x >> 4);
  acc = (acc ^ 381) * 111 + (x >> 5);
  acc = (acc ^ 388) * 113 + (x >> 1);
  acc = (acc ^ 395) * 115 + (x >> 2);
  acc = (acc ^ 402) * 117 + (x >> 3);
  acc = (acc ^ 409) * 119 + (x >> 4);
  acc = (acc ^ 416) * 121 + (x >> 5);
  acc += sink(acc + 0);
  acc += sink(acc + 1);
  acc += sink(acc + 2);
  acc += sink(acc + 3);
  acc += sink(acc + 4);
  acc += sink(acc + 5);
  acc += sink(acc + 6);
  acc += sink(acc + 7);
  acc += sink(acc + 8);
  acc += sink(acc + 9);
  acc += sink(acc + 10);
  acc += sink(acc + 11);
  acc += sink(acc + 12);
  acc += sink(acc + 13);
  acc += sink(acc + 14);
  acc += sink(acc + 15);
  acc += sink(acc + 16);
  acc += sink(acc + 17);
  acc += sink(acc + 18);
  acc += sink(acc + 19);
  return acc;
}

int main(int argc, char** argv) {
  (void)argv;
  int total = 0;
  total += step_a(argc);
  total += step_b(argc);
  total += step_c(argc);
  total += step_d(argc);
  total += step_e(argc);
  return total & 1;
}
