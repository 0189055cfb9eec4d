#include <doctest.h>

TEST_SUITE_BEGIN("hamiltonian");

TEST_SUITE_END();
