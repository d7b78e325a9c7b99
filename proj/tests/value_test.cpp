#include <gtest/gtest.h>

#include "notation/generate.hpp"
#include "notation/json.hpp"
#include "notation/value.hpp"
#include "support.hpp"

namespace notation {
namespace {

TEST(Number, KeepsLiteralSpelling) {
  EXPECT_EQ(Value::number("7.5").as_number().literal(), "7.5");
  EXPECT_FALSE(Value::number("7.5").as_number() == Value::number("7.50").as_number());
  EXPECT_TRUE(Value::number("7").as_number().is_integer());
  EXPECT_FALSE(Value::number("7.0").as_number().is_integer());
  EXPECT_FALSE(Value::number("1e3").as_number().is_integer());
  EXPECT_EQ(Value(-42).as_number().literal(), "-42");
}

TEST(Number, RejectsNonJsonLiterals) {
  for (const char* bad : {"", "01", "+1", ".5", "5.", "1e", "NaN", "0x10", "1 "}) {
    EXPECT_FALSE(Number::is_literal(bad)) << bad;
  }
  for (const char* good : {"0", "-0", "1.25", "1E+9", "-3e-2"}) {
    EXPECT_TRUE(Number::is_literal(good)) << good;
  }
  EXPECT_THROW(Value::number("abc"), std::invalid_argument);
}

TEST(Object, RejectsDuplicateKeysAndKeepsOrder) {
  Object o;
  EXPECT_TRUE(o.insert("b", Value(1)));
  EXPECT_TRUE(o.insert("a", Value(2)));
  EXPECT_FALSE(o.insert("b", Value(3)));
  EXPECT_EQ(o.keys(), (std::vector<std::string>{"b", "a"}));
  EXPECT_EQ(o.find("b")->as_number().literal(), "1");
}

TEST(Object, RenameKeepsPosition) {
  Object o{{"x", Value(1)}, {"action", Value("f")}, {"z", Value(2)}};
  EXPECT_TRUE(o.rename("action", "tool"));
  EXPECT_EQ(o.keys(), (std::vector<std::string>{"x", "tool", "z"}));
  EXPECT_FALSE(o.rename("missing", "y"));
  EXPECT_FALSE(o.rename("x", "z"));  // would collide
}

TEST(Equals, NullIsEqualToItself) {
  EXPECT_TRUE(equals(Value(), Value(), true));
  EXPECT_TRUE(equals(Value(), Value(), false));
}

TEST(Equals, KeyOrderSensitivity) {
  const Value ab(Object{{"a", Value(1)}, {"b", Value(2)}});
  const Value ba(Object{{"b", Value(2)}, {"a", Value(1)}});
  EXPECT_FALSE(equals(ab, ba, true));
  EXPECT_TRUE(equals(ab, ba, false));
}

TEST(Equals, DistinguishesKindsAndLiterals) {
  EXPECT_FALSE(equals(Value(1), Value("1")));
  EXPECT_FALSE(equals(Value::number("7.5"), Value::number("7.50")));
  EXPECT_FALSE(equals(Value(Array{Value(1)}), Value(Array{Value(1), Value(1)})));
  EXPECT_FALSE(equals(Value(false), Value()));
}

TEST(Signature, ObjectsOnly) {
  const Value v(Object{{"id", Value(1)}, {"name", Value("x")}});
  ASSERT_TRUE(signature(v).has_value());
  EXPECT_EQ(signature(v)->keys, (std::vector<std::string>{"id", "name"}));
  EXPECT_FALSE(signature(Value(7)).has_value());
  EXPECT_FALSE(signature(Value(Array{})).has_value());
}

TEST(Signature, IsOrderSensitiveAndIgnoresValues) {
  const Value a(Object{{"id", Value(1)}, {"name", Value("x")}});
  const Value b(Object{{"id", Value("other")}, {"name", Value(Array{})}});
  const Value c(Object{{"name", Value("x")}, {"id", Value(1)}});
  EXPECT_EQ(signature(a), signature(b));
  EXPECT_NE(signature(a), signature(c));
}

TEST(Signature, SampleHikesShareOneSignature) {
  const Value sample = testing::hikes_sample();
  const auto& hikes = sample.as_object().find("hikes")->as_array();
  const StructSignature expected{{"id", "name", "distanceKm"}};
  for (const auto& h : hikes) EXPECT_EQ(signature(h), expected);
}

TEST(Generate, ZeroDepthYieldsScalar) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    EXPECT_TRUE(generate(s, GenProfile::scalar()).is_scalar()) << s;
  }
}

TEST(Generate, IsDeterministic) {
  for (const char* name : {"mixed", "delimiter", "tabular", "scalar"}) {
    const auto p = GenProfile::by_name(name);
    for (std::uint64_t s = 0; s < 50; ++s) {
      EXPECT_EQ(encode_json(generate(s, p)), encode_json(generate(s, p))) << name << " " << s;
    }
  }
}

TEST(Generate, TabularProfileEmitsUniformTables) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const Value v = generate(s, GenProfile::tabular());
    ASSERT_TRUE(v.is_array());
    const auto& rows = v.as_array();
    ASSERT_GE(rows.size(), 3u);
    const auto sig = signature(rows.front());
    ASSERT_TRUE(sig.has_value());
    EXPECT_GE(sig->keys.size(), 2u);
    for (const auto& r : rows) {
      EXPECT_EQ(signature(r), sig);
      for (const auto& [k, cell] : r.as_object()) EXPECT_TRUE(cell.is_scalar());
    }
  }
}

std::size_t depth_of(const Value& v) {
  std::size_t d = 0;
  if (v.is_array()) {
    for (const auto& e : v.as_array()) d = std::max(d, depth_of(e) + 1);
  } else if (v.is_object()) {
    for (const auto& [k, e] : v.as_object()) d = std::max(d, depth_of(e) + 1);
  }
  return d;
}

void check_bounds(const Value& v, const GenProfile& p) {
  if (v.is_array()) {
    EXPECT_LE(v.as_array().size(), p.max_array_len);
    for (const auto& e : v.as_array()) check_bounds(e, p);
  } else if (v.is_object()) {
    for (const auto& [k, e] : v.as_object()) {
      EXPECT_LE(k.size(), p.max_key_len);
      check_bounds(e, p);
    }
  }
}

TEST(Generate, RespectsProfileBounds) {
  GenProfile p = GenProfile::mixed();
  p.max_depth = 8;
  p.max_array_len = 64;
  p.max_key_len = 16;
  p.max_object_size = 3;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Value v = generate(s, p);
    EXPECT_LE(depth_of(v), 8u);
    check_bounds(v, p);
  }
  p.max_depth = 9;
  EXPECT_THROW(generate(0, p), std::invalid_argument);
}

TEST(Generate, DelimiterProfileProducesDelimiterStrings) {
  std::size_t hits = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::string j = encode_json(generate(s, GenProfile::delimiter_heavy()));
    if (j.find("\\n") != std::string::npos || j.find("(") != std::string::npos) ++hits;
  }
  EXPECT_GT(hits, 50u);
}

TEST(Equals, ReflexiveOnGeneratedValues) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const Value v = generate(s, GenProfile::mixed());
    EXPECT_TRUE(equals(v, v, true));
  }
}

}  // namespace
}  // namespace notation
