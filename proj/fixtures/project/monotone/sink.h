int sink(int v);
