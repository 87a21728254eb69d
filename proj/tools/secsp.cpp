#include <cstdio>

int main() {
    std::puts("secsp: command-line interface under construction");
    return 0;
}
