// C++ fixture: member functions, a namespace and an inline template.
#include <cstdio>

namespace geo {

struct Box {
  int w, h;
  int Area() const { return w * h; }
  int Perimeter() const;
};

int Box::Perimeter() const { return 2 * (w + h); }

template <typename T>
inline T Twice(T v) {
  return v + v;
}

}  // namespace geo

__attribute__((noinline)) int Measure(const geo::Box& b) {
  return geo::Twice(b.Area()) + b.Perimeter();
}

int main(int argc, char**) {
  geo::Box b{argc, 3};
  std::printf("%d\n", Measure(b));
  return 0;
}
