#include <doctest.h>

TEST_SUITE_BEGIN("timeloop");

TEST_SUITE_END();
