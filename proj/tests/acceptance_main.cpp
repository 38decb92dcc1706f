#include "acceptance.hpp"

#include <iostream>

int main() { return forcemap::selftest::printAcceptance(std::cout) == 0 ? 0 : 1; }
