#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zap/config.hpp"

using namespace zap;

TEST_CASE("parses keys, comments, and blank lines") {
    auto kv = KeyValueConfig::from_string(
        "# leading comment\n"
        "arch.storage_rows = 4\n"
        "\n"
        "timing.move_t0_us=200.0   # trailing comment\n"
        "name = hello world\n");
    CHECK(kv.get_int("arch.storage_rows", -1) == 4);
    CHECK(kv.get_double("timing.move_t0_us", -1) == doctest::Approx(200.0));
    CHECK(kv.get_string("name", "") == "hello world");
    CHECK(kv.has("name"));
    CHECK(!kv.has("missing"));
}

TEST_CASE("missing keys fall back") {
    KeyValueConfig kv;
    CHECK(kv.get_int("a", 7) == 7);
    CHECK(kv.get_double("b", 1.5) == doctest::Approx(1.5));
    CHECK(kv.get_bool("c", true));
    CHECK(kv.get_string("d", "x") == "x");
}

TEST_CASE("bad values raise ConfigError") {
    auto kv = KeyValueConfig::from_string("k = notanumber\nb = maybe\n");
    CHECK_THROWS_AS(kv.get_int("k", 0), ConfigError);
    CHECK_THROWS_AS(kv.get_double("k", 0), ConfigError);
    CHECK_THROWS_AS(kv.get_bool("b", false), ConfigError);
}

TEST_CASE("malformed lines raise ConfigError") {
    CHECK_THROWS_AS(KeyValueConfig::from_string("just words\n"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::from_string("= value\n"), ConfigError);
}

TEST_CASE("booleans accept several spellings") {
    auto kv = KeyValueConfig::from_string("a=true\nb=0\nc=on\nd=off\n");
    CHECK(kv.get_bool("a", false));
    CHECK(!kv.get_bool("b", true));
    CHECK(kv.get_bool("c", false));
    CHECK(!kv.get_bool("d", true));
}

TEST_CASE("last duplicate wins") {
    auto kv = KeyValueConfig::from_string("k=1\nk=2\n");
    CHECK(kv.get_int("k", 0) == 2);
}
