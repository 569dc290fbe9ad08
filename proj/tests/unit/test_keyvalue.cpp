#include "latgate/constants.hpp"
#include "latgate/keyvalue.hpp"

#include <doctest.h>

#include <sstream>
#include <stdexcept>

using namespace latgate;

TEST_CASE("unit suffixes convert to SI") {
    CHECK(parse_quantity("100 W/cm2", Dimension::intensity) == doctest::Approx(1e6));
    CHECK(parse_quantity("0.1 uW/cm2", Dimension::intensity) == doctest::Approx(1e-3));
    CHECK(parse_quantity("1.1049 mW/cm2", Dimension::intensity) == doctest::Approx(11.049));
    CHECK(parse_quantity("120 GHz", Dimension::angular_frequency) == doctest::Approx(constants::two_pi * 120e9));
    CHECK(parse_quantity("3 rad/s", Dimension::angular_frequency) == 3.0);
    CHECK(parse_quantity("5 kHz", Dimension::energy_frequency) == doctest::Approx(constants::h * 5e3));
    CHECK(parse_quantity("90 deg", Dimension::angle) == doctest::Approx(constants::pi / 2));
    CHECK(parse_quantity("852 nm", Dimension::length) == doctest::Approx(852e-9));
    CHECK(parse_quantity("133 amu", Dimension::mass) == doctest::Approx(133 * 1.66053906660e-27));
    CHECK(parse_quantity("5 ms", Dimension::time) == doctest::Approx(5e-3));
    CHECK(parse_quantity("2.5", Dimension::intensity) == 2.5);
}

TEST_CASE("malformed quantities are rejected") {
    CHECK_THROWS_AS(parse_quantity("fast", Dimension::time), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("3 furlongs", Dimension::length), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("3 GHz", Dimension::intensity), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("3 m", Dimension::dimensionless), std::invalid_argument);
}

TEST_CASE("key-value parsing") {
    std::istringstream in("# comment\n a = 1 W/m2  # trailing\n\nb=hello\n");
    const KeyValueFile f = KeyValueFile::parse(in, "mem");
    CHECK(f.raw("b") == "hello");
    CHECK(f.quantity("a", Dimension::intensity) == 1.0);
    CHECK(f.quantity_or("missing", Dimension::intensity, 7.0) == 7.0);
    CHECK_FALSE(f.find_raw("missing").has_value());
    CHECK_THROWS(f.raw("missing"));

    std::istringstream dup("a = 1\na = 2\n");
    CHECK_THROWS_AS(KeyValueFile::parse(dup), std::invalid_argument);
    std::istringstream noeq("just words\n");
    CHECK_THROWS_AS(KeyValueFile::parse(noeq), std::invalid_argument);
}
