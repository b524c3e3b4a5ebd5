#include <iostream>

int main() {
    std::cout << "hypgraft: experiment harness not wired up yet\n";
    return 1;
}
