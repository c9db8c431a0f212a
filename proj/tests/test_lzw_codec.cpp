#include "lzwv/lzw_codec.hpp"

#include <gtest/gtest.h>

#include <random>

#include "lzwv/error.hpp"
#include "oracle/naive_lzw.hpp"
#include "test_support.hpp"

namespace lzwv {
namespace {

std::uint64_t count(const EncodeResult& r, std::string_view pattern) {
  return r.counts.count_of(r.dictionary, pattern).value_or(~0ull);
}

TEST(EncodeWithCounts, EmptyInput) {
  const auto r = encode_with_counts("");
  EXPECT_TRUE(r.stream.codes.empty());
  EXPECT_EQ(r.stream.original_length, 0u);
  EXPECT_EQ(r.dictionary.size(), 256u);
  EXPECT_EQ(r.counts.sum(), 0u);
  EXPECT_EQ(r.counts.total_increments(), 0u);
}

TEST(EncodeWithCounts, Ababab) {
  const auto r = encode_with_counts("ABABAB");
  EXPECT_EQ(r.stream.codes, (std::vector<Code>{65, 66, 256, 256}));
  EXPECT_EQ(count(r, "A"), 3u);
  EXPECT_EQ(count(r, "B"), 1u);
  EXPECT_EQ(count(r, "AB"), 3u);
  EXPECT_EQ(count(r, "BA"), 1u);
  EXPECT_EQ(count(r, "ABA"), 1u);
  EXPECT_EQ(r.dictionary.find("AB"), Code{256});
  EXPECT_EQ(r.dictionary.find("BA"), Code{257});
  EXPECT_EQ(r.dictionary.find("ABA"), Code{258});
  EXPECT_EQ(r.dictionary.next_code(), 259u);
}

TEST(EncodeWithCounts, RunGrowsPhrases) {
  const auto r = encode_with_counts("AAA");
  EXPECT_EQ(r.stream.codes, (std::vector<Code>{65, 256}));
  EXPECT_EQ(count(r, "A"), 2u);
  EXPECT_EQ(count(r, "AA"), 2u);
  EXPECT_EQ(r.dictionary.find("AA"), Code{256});
}

TEST(EncodeWithCounts, RepeatedByteCounterTouchedExactlyN) {
  const auto r = encode_with_counts(std::string(10000, 'x'));
  EXPECT_EQ(r.counts.total_increments(), 10000u);
}

TEST(EncodeWithCounts, NonAsciiBytesAreOrdinarySymbols) {
  const std::string input("\xff\x00\xff\x00\xff", 5);
  const auto r = encode_with_counts(input);
  EXPECT_EQ(r.stream.codes, (std::vector<Code>{255, 0, 256, 255}));
  EXPECT_EQ(decode(r.stream), input);
}

TEST(Decode, Examples) {
  EXPECT_EQ(decode({{65, 66, 256, 256}, 6}), "ABABAB");
  EXPECT_EQ(decode({{65, 256}, 3}), "AAA");  // KwKwK
  EXPECT_EQ(decode({{}, 0}), "");
}

TEST(Decode, RejectsUndefinedCodes) {
  auto expect_corrupt = [](EncodedStream s) {
    try {
      decode(s);
      FAIL() << "expected CorruptStream";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::CorruptStream);
    }
  };
  expect_corrupt({{256}, 2});           // nothing defined yet
  expect_corrupt({{65, 257}, 3});       // one past the KwKwK code
  expect_corrupt({{65, 66}, 3});        // length mismatch
  expect_corrupt({{65, 66, 256}, 3});   // overruns original length
  expect_corrupt({{}, 1});
}

TEST(ReplayCounts, MatchesEncoder) {
  const auto r = encode_with_counts("ABABAB");
  const auto replay = replay_counts(r.stream);
  EXPECT_EQ(replay.dictionary, r.dictionary);
  EXPECT_EQ(replay.counts, r.counts);
}

TEST(ReplayCounts, EmptyAndKwKwK) {
  const auto empty = replay_counts({{}, 0});
  EXPECT_EQ(empty.dictionary.size(), 256u);
  EXPECT_EQ(empty.counts.sum(), 0u);

  const auto aaa = replay_counts({{65, 256}, 3});
  EXPECT_EQ(aaa.counts.count_of(aaa.dictionary, "A"), 2u);
  EXPECT_EQ(aaa.counts.count_of(aaa.dictionary, "AA"), 2u);
}

TEST(ReplayCounts, RejectsStreamsTheEncoderCannotEmit) {
  // Decodable, but after A,B the parse of "AB" would have used code 256.
  const EncodedStream non_greedy{{65, 66, 65, 66}, 4};
  EXPECT_EQ(decode(non_greedy), "ABAB");
  try {
    replay_counts(non_greedy);
    FAIL() << "expected CorruptStream";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CorruptStream);
  }
}

TEST(IncrementPrefixes, AddsOneToEachPrefix) {
  PatternDictionary dict;
  CountRegister reg;
  increment_prefixes(reg, dict, "A");
  EXPECT_EQ(reg.count('A'), 1u);  // single byte over all-zero counts
  increment_prefixes(reg, dict, "B");
  const Code ab = dict.add('A', 'B');
  reg.register_new(ab);
  increment_prefixes(reg, dict, "AB");
  ASSERT_EQ(reg.count('A'), 2u);
  ASSERT_EQ(reg.count('B'), 1u);
  ASSERT_EQ(reg.count(ab), 2u);

  increment_prefixes(reg, dict, "AB");
  EXPECT_EQ(reg.count('A'), 3u);
  EXPECT_EQ(reg.count('B'), 1u);
  EXPECT_EQ(reg.count(ab), 3u);
}

TEST(IncrementPrefixes, TotalGrowsByPhraseLength) {
  const auto r = encode_with_counts("aaaaaaaaaaaaaaa");  // builds "aaaaa"
  auto dict = r.dictionary;
  auto reg = r.counts;
  const auto before = reg.total_increments();
  increment_prefixes(reg, dict, "aaaaa");
  EXPECT_EQ(reg.total_increments() - before, 5u);
}

TEST(IncrementPrefixes, MissingPhraseIsInternalError) {
  PatternDictionary dict;
  CountRegister reg;
  EXPECT_THROW(increment_prefixes(reg, dict, "XY"), Error);
}

TEST(PatternDictionary, AncestorAndPattern) {
  const auto r = encode_with_counts("abcabcabcabcabc");
  for (Code c = 256; c < r.dictionary.next_code(); ++c) {
    const std::string p = r.dictionary.pattern(c);
    for (std::size_t k = 1; k <= p.size(); ++k) {
      EXPECT_EQ(r.dictionary.pattern(r.dictionary.ancestor(c, k)), p.substr(0, k));
    }
  }
  EXPECT_THROW(r.dictionary.ancestor(256, 0), Error);
}

// --- properties over random inputs -------------------------------------

class CodecProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{0x1f2e3d4c};
};

TEST_F(CodecProperties, RoundTrip) {
  for (int i = 0; i < 600; ++i) {
    const std::string x = testing::random_input(rng, 4096);
    ASSERT_EQ(decode(encode_with_counts(x).stream), x) << "iteration " << i;
  }
}

TEST_F(CodecProperties, CounterAccounting) {
  for (int i = 0; i < 300; ++i) {
    const std::string x = testing::random_input(rng, 4096);
    const auto r = encode_with_counts(x);
    ASSERT_EQ(r.counts.total_increments(), x.size());
    ASSERT_EQ(r.counts.sum(), x.size() + r.dictionary.multi_byte_entries());
    ASSERT_EQ(r.dictionary.next_code(), 256 + r.dictionary.multi_byte_entries());
  }
}

TEST_F(CodecProperties, PrefixClosureAndMonotonicity) {
  for (int i = 0; i < 200; ++i) {
    const std::string x = testing::random_input(rng, 2048);
    const auto r = encode_with_counts(x);
    for (Code c = 0; c < 256; ++c) ASSERT_EQ(r.dictionary.pattern(c), std::string(1, char(c)));
    for (Code c = 256; c < r.dictionary.next_code(); ++c) {
      const std::string p = r.dictionary.pattern(c);
      const auto parent = r.dictionary.find(p.substr(0, p.size() - 1));
      ASSERT_TRUE(parent.has_value());
      ASSERT_LT(*parent, c);
      ASSERT_GE(r.counts.count(c), 1u);
      ASSERT_GE(r.counts.count(*parent), r.counts.count(c));
      ASSERT_EQ(r.dictionary.find(p), c);
    }
  }
}

TEST_F(CodecProperties, StreamCodeBound) {
  for (int i = 0; i < 200; ++i) {
    const std::string x = testing::random_input(rng, 2048);
    const auto r = encode_with_counts(x);
    for (std::size_t k = 1; k <= r.stream.codes.size(); ++k) {
      ASSERT_LE(r.stream.codes[k - 1], 254 + k);
    }
  }
}

TEST_F(CodecProperties, ReplayEquivalence) {
  for (int i = 0; i < 300; ++i) {
    const std::string x = testing::random_input(rng, 4096);
    const auto r = encode_with_counts(x);
    const auto replay = replay_counts(r.stream);
    ASSERT_EQ(replay.dictionary, r.dictionary);
    ASSERT_EQ(replay.counts, r.counts);
  }
}

TEST_F(CodecProperties, MatchesNaiveOracle) {
  for (int i = 0; i < 300; ++i) {
    const std::string x = testing::random_input(rng, 1024);
    const auto r = encode_with_counts(x);
    const auto naive = oracle::naive_encode(x);
    ASSERT_EQ(r.stream.codes.size(), naive.codes.size());
    for (std::size_t j = 0; j < naive.codes.size(); ++j) {
      ASSERT_EQ(r.stream.codes[j], static_cast<Code>(naive.codes[j]));
    }
    ASSERT_EQ(r.dictionary.size(), naive.dictionary.size());
    for (const auto& [pattern, code] : naive.dictionary) {
      ASSERT_EQ(r.dictionary.pattern(code), pattern);
      ASSERT_EQ(r.counts.count(code), naive.counts.at(pattern));
    }
    ASSERT_EQ(r.counts.total_increments(), naive.increments);
    ASSERT_EQ(oracle::naive_decode(naive.codes), x);
  }
}

}  // namespace
}  // namespace lzwv
