#include <doctest.h>

TEST_SUITE_BEGIN("mesh");

TEST_SUITE_END();
