#include <doctest.h>

TEST_SUITE_BEGIN("riemann");

TEST_SUITE_END();
