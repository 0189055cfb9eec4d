#include <doctest.h>

TEST_SUITE_BEGIN("solver1d");

TEST_SUITE_END();
