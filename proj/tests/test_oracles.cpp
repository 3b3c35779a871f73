#include <catch2/catch_amalgamated.hpp>
#include "sinkfp/sinkfp.hpp"

TEST_CASE("placeholder_oracles") { SUCCEED(); }
