#include <doctest.h>

TEST_SUITE_BEGIN("solver2d");

TEST_SUITE_END();
