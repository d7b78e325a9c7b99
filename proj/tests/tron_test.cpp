#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "notation/errors.hpp"
#include "notation/generate.hpp"
#include "notation/json.hpp"
#include "notation/tron.hpp"
#include "support.hpp"

namespace notation {
namespace {

std::string canonical_golden() {
  std::string g = testing::read_fixture("golden/hikes.tron");
  if (!g.empty() && g.back() == '\n') g.pop_back();
  return g;
}

TEST(ClassName, Sequence) {
  EXPECT_EQ(class_name(0), "A");
  EXPECT_EQ(class_name(25), "Z");
  EXPECT_EQ(class_name(26), "AA");
  EXPECT_EQ(class_name(27), "AB");
  EXPECT_EQ(class_name(26 + 26 * 26), "AAA");
}

TEST(ExtractClasses, Sample) {
  const Value v = testing::hikes_sample();
  const ClassTable t = extract_classes(std::span(&v, 1), 2);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.defs()[0].name, "A");
  EXPECT_EQ(t.defs()[0].fields.keys, (std::vector<std::string>{"id", "name", "distanceKm"}));
}

TEST(ExtractClasses, SingleObjectBelowThreshold) {
  const Value v(Object{{"a", Value(1)}});
  EXPECT_TRUE(extract_classes(std::span(&v, 1), 2).empty());
  EXPECT_EQ(extract_classes(std::span(&v, 1), 1).size(), 1u);
  EXPECT_THROW(extract_classes(std::span(&v, 1), 0), std::invalid_argument);
}

Value schema_with_params(const std::string& name, int n) {
  Object props;
  for (int i = 0; i < n; ++i) {
    props.insert("p" + std::to_string(i),
                 Value(Object{{"type", Value("string")}, {"description", Value("param")}}));
  }
  return Value(Object{{"name", Value(name)}, {"parameters", Value(std::move(props))}});
}

// Brute-force occurrence count used as an independent oracle.
void count_signatures(const Value& v, std::map<std::vector<std::string>, std::size_t>& counts,
                      std::vector<std::vector<std::string>>& order) {
  if (v.is_object()) {
    const auto keys = v.as_object().keys();
    if (!keys.empty()) {
      if (counts[keys]++ == 0) order.push_back(keys);
    }
    for (const auto& [k, e] : v.as_object()) count_signatures(e, counts, order);
  } else if (v.is_array()) {
    for (const auto& e : v.as_array()) count_signatures(e, counts, order);
  }
}

TEST(ExtractClasses, CountsAcrossBatchMatchesBruteForce) {
  const std::vector<Value> roots{schema_with_params("a", 3), schema_with_params("b", 3)};
  const ClassTable t = extract_classes(roots, 2);
  std::map<std::vector<std::string>, std::size_t> counts;
  std::vector<std::vector<std::string>> order;
  for (const auto& r : roots) count_signatures(r, counts, order);
  std::vector<std::vector<std::string>> expected;
  for (const auto& k : order) {
    if (counts[k] >= 2) expected.push_back(k);
  }
  ASSERT_EQ(t.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(t.defs()[i].fields.keys, expected[i]);
  EXPECT_EQ((counts[{"type", "description"}]), 6u);
}

TEST(EncodeTron, SampleMatchesCanonicalGolden) {
  EXPECT_EQ(encode_tron(testing::hikes_sample()), canonical_golden());
}

TEST(EncodeTron, SampleMatchesDisplayListingAfterUnwrap) {
  EXPECT_EQ(testing::unwrap_tron_display(testing::read_fixture("golden/hikes_display.tron")),
            encode_tron(testing::hikes_sample()));
}

TEST(EncodeTron, ScalarHasNoClassBlock) { EXPECT_EQ(encode_tron(Value(42)), "42"); }

TEST(EncodeTron, EmptyObjectsAreNeverClassed) {
  const Value v(Array{Value(Object{}), Value(Object{})});
  EXPECT_EQ(encode_tron(v), "[{},{}]");
}

TEST(EncodeTron, NestedInstances) {
  const Value pt(Object{{"x", Value(1)}, {"y", Value(2)}});
  const Value seg(Object{{"from", pt}, {"to", pt}});
  const Value v(Array{seg, seg});
  EXPECT_EQ(encode_tron(v), "class A: from,to\nclass B: x,y\n\n[A(B(1,2),B(1,2)),A(B(1,2),B(1,2))]");
  EXPECT_TRUE(equals(decode_tron(encode_tron(v)), v));
}

TEST(EncodeTron, QuotesNonIdentifierFields) {
  const Value o(Object{{"a b", Value(1)}, {"c", Value(2)}});
  const std::string t = encode_tron(Value(Array{o, o}));
  EXPECT_EQ(t, "class A: \"a b\",c\n\n[A(1,2),A(1,2)]");
  EXPECT_TRUE(equals(decode_tron(t), Value(Array{o, o})));
}

TEST(EncodeTron, DelimitersInsideArgumentsRoundTrip) {
  const Value o(Object{{"s", Value("a(b),c)")}, {"t", Value(",(")}});
  const Value v(Array{o, o});
  EXPECT_TRUE(equals(decode_tron(encode_tron(v)), v));
}

TEST(EncodeTronBatch, SharedClassBlock) {
  const Value s = testing::hikes_sample();
  const std::vector<Value> roots{s, s};
  const std::string t = encode_tron_batch(roots);
  // Every object now occurs twice, so the root and context are classed too.
  const std::size_t split = t.find("\n\n");
  ASSERT_NE(split, std::string::npos);
  EXPECT_EQ(t.find("\n\n", split + 1), std::string::npos);
  EXPECT_EQ(t.substr(0, split),
            "class A: context,friends,hikes\nclass B: task,location,season\nclass C: id,name,distanceKm");
  const std::string body =
      R"(A(B("Our favorite hikes","Boulder","spring_2025"),["ana","luis","sam"],)"
      R"([C(1,"Blue Lake Trail",7.5),C(2,"Ridge Overlook",9.2),C(3,"Wildflower Loop",5.1)]))";
  EXPECT_EQ(t.substr(split + 2), body + "\n" + body);
  const auto back = decode_tron_batch(t);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_TRUE(equals(back[0], s) && equals(back[1], s));
}

TEST(EncodeTronBatch, BatchOfOneMatchesSingle) {
  const Value s = testing::hikes_sample();
  EXPECT_EQ(encode_tron_batch(std::span(&s, 1)), encode_tron(s));
}

TEST(EncodeTronBatch, AmortizesClassHeader) {
  std::vector<Value> roots;
  std::size_t individual = 0;
  for (int i = 0; i < 5; ++i) {
    roots.push_back(schema_with_params("tool" + std::to_string(i), 2));
    individual += encode_tron(roots.back()).size();
  }
  EXPECT_LT(encode_tron_batch(roots).size(), individual);
}

TEST(DecodeTron, SampleListing) {
  EXPECT_TRUE(equals(decode_tron(testing::read_fixture("golden/hikes.tron")), testing::hikes_sample()));
}

TEST(DecodeTron, ArityMismatch) {
  try {
    decode_tron("class A: id,name,distanceKm\n\nA(1,\"x\")");
    FAIL() << "expected ArityMismatch";
  } catch (const ArityMismatch& e) {
    EXPECT_EQ(e.context(), "A");
    EXPECT_EQ(e.expected(), 3u);
    EXPECT_EQ(e.actual(), 2u);
  }
}

TEST(DecodeTron, UnknownClass) {
  try {
    decode_tron("B(1)");
    FAIL() << "expected UnknownClass";
  } catch (const UnknownClass& e) {
    EXPECT_EQ(e.name(), "B");
  }
}

TEST(DecodeTron, Strictness) {
  EXPECT_THROW(decode_tron("class A: x\nclass A: y\n\nA(1)"), DuplicateClass);
  EXPECT_THROW(decode_tron("class A: x,x\n\nA(1,2)"), DecodeError);
  EXPECT_THROW(decode_tron("class A: x\n\nA(1) 2"), SyntaxError);
  EXPECT_THROW(decode_tron("class A: x\nA(1)"), SyntaxError);  // missing blank line
  EXPECT_THROW(decode_tron("{\"a\":1,\"a\":2}"), DuplicateKey);
  EXPECT_THROW(decode_tron("class A: x\n\n[A(1),A(1,)]"), SyntaxError);
  EXPECT_THROW(decode_tron("class A: x\n\nA (1)"), SyntaxError);
  EXPECT_THROW(decode_tron(""), SyntaxError);
}

TEST(TronBackfire, SingletonWithForcedClassCostsMore) {
  // The header "class A: " + fields + "\n\n" replaces quoted keys, colons and
  // braces. For k bare keys the difference is 11 - 2k bytes.
  for (int k = 1; k <= 5; ++k) {
    Object o;
    for (int i = 0; i < k; ++i) o.insert("f" + std::to_string(i), Value(i));
    const Value v(std::move(o));
    const std::size_t json = encode_json(v).size();
    const std::size_t tron = encode_tron(v, {1}).size();
    EXPECT_EQ(static_cast<long>(tron) - static_cast<long>(json), 11 - 2 * k) << k;
    EXPECT_GE(tron, json);
    EXPECT_EQ(encode_tron(v), encode_json(v));  // default threshold emits no class
  }
}

TEST(TronScaling, SavingsGrowWithRepetition) {
  long previous = -1000000;
  for (int n = 2; n <= 30; ++n) {
    Array rows;
    for (int i = 0; i < n; ++i) rows.push_back(Value(Object{{"id", Value(i)}, {"ok", Value(true)}}));
    const Value v(std::move(rows));
    const long saving = static_cast<long>(encode_json(v).size()) - static_cast<long>(encode_tron(v).size());
    EXPECT_GT(saving, previous) << n;
    previous = saving;
  }
}

TEST(TronProperty, RoundTripGenerated) {
  for (const char* name : {"mixed", "delimiter", "tabular", "scalar"}) {
    const auto p = GenProfile::by_name(name);
    for (std::uint64_t s = 0; s < 2000; ++s) {
      const Value v = generate(s, p);
      const std::string t = encode_tron(v);
      Value back;
      ASSERT_NO_THROW(back = decode_tron(t)) << name << " seed " << s << "\n" << t;
      ASSERT_TRUE(equals(back, v, true)) << name << " seed " << s << "\n" << t;
    }
  }
}

TEST(TronProperty, BatchRoundTripGenerated) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    std::vector<Value> roots;
    for (std::uint64_t j = 0; j < 4; ++j) roots.push_back(generate(s * 4 + j, GenProfile::mixed()));
    const auto back = decode_tron_batch(encode_tron_batch(roots));
    ASSERT_EQ(back.size(), roots.size());
    for (std::size_t j = 0; j < roots.size(); ++j) ASSERT_TRUE(equals(back[j], roots[j])) << s;
  }
}

TEST(TronClassBlock, ByteCount) {
  const Value v = testing::hikes_sample();
  const ClassTable t = extract_classes(std::span(&v, 1), 2);
  EXPECT_EQ(tron_class_block_bytes(t), std::string("class A: id,name,distanceKm\n\n").size());
  EXPECT_EQ(tron_class_block_bytes(ClassTable{}), 0u);
}

}  // namespace
}  // namespace notation
