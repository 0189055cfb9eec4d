#include <doctest.h>

TEST_SUITE_BEGIN("field");

TEST_SUITE_END();
