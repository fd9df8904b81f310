#include <cstdio>

int main() {
    std::puts("parasol CLI placeholder");
    return 0;
}
