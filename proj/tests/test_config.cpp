#include <gtest/gtest.h>

#include <cstdlib>

#include "qmzv/config.hpp"
#include "qmzv/errors.hpp"

using namespace qmzv;

TEST(Config, Parse) {
  Config c = parse_config("# comment\norder = 30\nformat = \"json\"\n\nbeta = table.json\n");
  EXPECT_EQ(c.order, 30);
  EXPECT_EQ(c.format, "json");
  EXPECT_EQ(c.beta, "table.json");
  EXPECT_EQ(c.weight, 8);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("colour = red\n"), ParseError);
  EXPECT_THROW(parse_config("order 30\n"), ParseError);
  EXPECT_THROW(parse_config("order = x\n"), ParseError);
  Config c;
  c.format = "xml";
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(Config, EnvironmentOverride) {
  Config c = parse_config("order = 30\n");
  setenv("QMZV_ORDER", "12", 1);
  apply_environment(c);
  unsetenv("QMZV_ORDER");
  EXPECT_EQ(c.order, 12);
}
