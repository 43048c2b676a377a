#include <cstdio>

int main() {
  std::puts("mrdnn: command line not wired up yet");
  return 1;
}
