// Copyright 2026 The ttcsw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttcsw/tta.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "support/generators.h"
#include "support/synthetic.h"
#include "ttcsw/error.h"
#include "ttcsw/metrics.h"
#include "ttcsw/triplet_serde.h"

namespace ttcsw {
namespace {

constexpr char kTgt[] = "El sushi con cinta transportadora es muy recomendable";
constexpr char kSrc[] = "The conveyor belt sushi is highly recommended";

// Aligner answering from a phrase table keyed by the query term.
BackendPtr TableAligner(std::map<std::string, std::string> table,
                        std::shared_ptr<std::vector<std::string>> log = nullptr) {
  return std::make_shared<FunctionBackend>(
      "mock:table-aligner", nullptr, [table, log](const GenerationRequest& r) {
        std::vector<std::string> out;
        for (const auto& in : r.inputs) {
          if (log) log->push_back(in);
          const std::string term = in.substr(in.rfind("<SEP>") + 6);
          auto it = table.find(term);
          out.push_back(it == table.end() ? "None" : it->second);
        }
        return out;
      });
}

TEST(EnumerateTest, Counts) {
  EXPECT_EQ(EnumeratePhrases("a b c d e", 2).size(), 9u);
  EXPECT_EQ(EnumeratePhrases("a b c d e", 3).size(), 12u);
  EXPECT_TRUE(EnumeratePhrases("", 3).empty());
  const auto uni = EnumeratePhrases("x y x z", 1);
  ASSERT_EQ(uni.size(), 3u);
  EXPECT_EQ(uni[0].text, "x");
  EXPECT_EQ(uni[1].text, "y");
  EXPECT_EQ(uni[2].text, "z");
  EXPECT_EQ(uni[2].token_begin, 3u);
  EXPECT_THROW(EnumeratePhrases("a", 0), std::invalid_argument);
}

TEST(EnumerateTest, OrderAndSpans) {
  const std::string s = "big  red dog";
  const auto p = EnumeratePhrases(s, 2);
  ASSERT_EQ(p.size(), 5u);
  EXPECT_EQ(p[0].text, "big");
  EXPECT_EQ(p[1].text, "big red");
  EXPECT_EQ(s.substr(p[1].span.begin, p[1].span.size()), "big  red");
  EXPECT_EQ(p[4].text, "dog");
}

TEST(SelectTest, NoneAlignerGivesNothing) {
  TtaConfig config;
  EXPECT_TRUE(SelectCandidates(kTgt, kSrc, *testing::NoneAligner(), config, "es").empty());
}

TEST(SelectTest, FigureOneScenario) {
  auto aligner = TableAligner({{"conveyor belt sushi", "sushi con cinta transportadora"},
                               {"sushi", "sushi"},
                               {"highly recommended", "muy recomendable"}});
  TtaConfig config;
  const auto phrases = SelectCandidates(kTgt, kSrc, *aligner, config, "es");
  ASSERT_EQ(phrases.size(), 4u);
  EXPECT_EQ(phrases[0].phrase, "conveyor belt sushi");
  EXPECT_EQ(phrases[0].aligned_text, "sushi con cinta transportadora");
  EXPECT_EQ(phrases[0].source_side, PhraseSide::kSource);
  EXPECT_TRUE(phrases[0].aligned_span.has_value());
  EXPECT_EQ(phrases[1].phrase, "highly recommended");
  // "sushi" is a phrase of both sentences; the source side ranks first.
  EXPECT_EQ(phrases[2].phrase, "sushi");
  EXPECT_EQ(phrases[2].source_side, PhraseSide::kSource);
  EXPECT_EQ(phrases[3].phrase, "sushi");
  EXPECT_EQ(phrases[3].source_side, PhraseSide::kTarget);
}

TEST(SelectTest, RanksByLengthAndTruncates) {
  // Source sentence of 12 tokens; eight bigrams and four trigrams survive.
  const std::string src = "t0 t1 t2 t3 t4 t5 t6 t7 t8 t9 t10 t11";
  std::map<std::string, std::string> table;
  for (int i : {0, 2, 4, 6}) {
    table["t" + std::to_string(i) + " t" + std::to_string(i + 1) + " t" + std::to_string(i + 2)] =
        "x";
  }
  for (int i : {0, 1, 2, 3, 4, 5, 6, 7}) {
    table["t" + std::to_string(i) + " t" + std::to_string(i + 1)] = "x";
  }
  auto aligner = TableAligner(table);
  TtaConfig config;
  config.top_k_phrases = 10;
  const auto phrases = SelectCandidates("x", src, *aligner, config, "es");
  ASSERT_EQ(phrases.size(), 10u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(phrases[i].length_tokens, 3u);
  for (std::size_t i = 4; i < 10; ++i) EXPECT_EQ(phrases[i].length_tokens, 2u);
  for (std::size_t i = 1; i < phrases.size(); ++i) {
    EXPECT_GE(phrases[i - 1].length_tokens, phrases[i].length_tokens);
    if (phrases[i - 1].length_tokens == phrases[i].length_tokens) {
      EXPECT_LT(phrases[i - 1].position, phrases[i].position);
    }
  }
}

TEST(SelectTest, QueryFormat) {
  auto log = std::make_shared<std::vector<std::string>>();
  auto aligner = TableAligner({}, log);
  TtaConfig config;
  config.max_ngram = 1;
  SelectCandidates("uno dos", "one", *aligner, config, "es");
  EXPECT_EQ(*log, (std::vector<std::string>{"uno dos <SEP> one", "one <SEP> uno",
                                            "one <SEP> dos"}));
}

std::vector<AlignedPhrase> FigurePhrases() {
  auto aligner = TableAligner({{"conveyor belt sushi", "sushi con cinta transportadora"},
                               {"highly recommended", "muy recomendable"},
                               {"is", "es"}});
  return SelectCandidates(kTgt, kSrc, *aligner, TtaConfig{}, "es");
}

TEST(AugmentTest, BothTypesAlternate) {
  const auto phrases = FigurePhrases();
  ASSERT_EQ(phrases.size(), 3u);
  const auto inputs = BuildAugmentedInputs(kTgt, kSrc, phrases, 10);
  ASSERT_EQ(inputs.size(), 6u);
  EXPECT_EQ(inputs[0].type, AugmentationType::kTgtWithSrcPhrase);
  EXPECT_EQ(inputs[0].sentence, "El conveyor belt sushi es muy recomendable");
  EXPECT_EQ(inputs[0].substituted, "conveyor belt sushi");
  EXPECT_EQ(inputs[1].type, AugmentationType::kSrcWithTgtPhrase);
  EXPECT_EQ(inputs[1].sentence, "The sushi con cinta transportadora is highly recommended");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    EXPECT_EQ(inputs[i].type, i % 2 == 0 ? AugmentationType::kTgtWithSrcPhrase
                                         : AugmentationType::kSrcWithTgtPhrase);
    const Span sp = inputs[i].substituted_span;
    EXPECT_EQ(inputs[i].sentence.substr(sp.begin, sp.size()), inputs[i].substituted);
  }
  const auto five = BuildAugmentedInputs(kTgt, kSrc, phrases, 5);
  ASSERT_EQ(five.size(), 5u);
  EXPECT_EQ(five[4].type, AugmentationType::kTgtWithSrcPhrase);
  EXPECT_TRUE(BuildAugmentedInputs(kTgt, kSrc, {}, 10).empty());
}

TEST(AugmentTest, UnlocatableCounterpartIsSkipped) {
  auto phrases = FigurePhrases();
  phrases[0].aligned_span.reset();
  std::vector<std::string> notes;
  const auto inputs = BuildAugmentedInputs(kTgt, kSrc, phrases, 10, &notes);
  EXPECT_EQ(inputs.size(), 4u);
  EXPECT_EQ(notes.size(), 1u);
}

TEST(AlignCandidatesTest, KnownPairShortCircuits) {
  const auto phrases = FigurePhrases();
  const auto inputs = BuildAugmentedInputs(kTgt, kSrc, phrases, 10);
  auto log = std::make_shared<std::vector<std::string>>();
  auto aligner = TableAligner({}, log);
  const CandidateSet c = AlignCandidates(
      {{"conveyor belt sushi", "muy recomendable", Polarity::kPositive}}, inputs[0], kTgt,
      *aligner, phrases, "es");
  EXPECT_EQ(c.n_aligner_queries, 0u);
  EXPECT_TRUE(log->empty());
  ASSERT_EQ(c.triplets.size(), 1u);
  EXPECT_EQ(c.triplets[0].aspect, "sushi con cinta transportadora");
  EXPECT_EQ(c.triplets[0].opinion, "muy recomendable");
}

TEST(AlignCandidatesTest, NoneAnswerKeepsTermAndFlagsIt) {
  const auto phrases = FigurePhrases();
  const auto inputs = BuildAugmentedInputs(kTgt, kSrc, phrases, 10);
  // SRC_WITH_TGT input: "The sushi con cinta transportadora is highly recommended".
  const CandidateSet c = AlignCandidates(
      {{"sushi con cinta transportadora", "highly", Polarity::kPositive}}, inputs[1], kTgt,
      *testing::NoneAligner(), {}, "es");
  EXPECT_EQ(c.n_aligner_queries, 1u);
  EXPECT_EQ(c.n_unalignable, 1u);
  EXPECT_EQ(c.triplets[0].aspect, "sushi con cinta transportadora");
  EXPECT_EQ(c.triplets[0].opinion, "highly");
  EXPECT_FALSE(c.unalignable[0].first);
  EXPECT_TRUE(c.unalignable[0].second);
}

TEST(AlignCandidatesTest, MixedTripletQueriesOnlyTheSourceTerm) {
  const auto phrases = FigurePhrases();
  const auto inputs = BuildAugmentedInputs(kTgt, kSrc, phrases, 10);
  auto log = std::make_shared<std::vector<std::string>>();
  auto aligner = TableAligner({{"belt sushi", "sushi con cinta"}}, log);
  // TGT_WITH_SRC input: "El conveyor belt sushi es muy recomendable".
  const CandidateSet c =
      AlignCandidates({{"belt sushi", "muy recomendable", Polarity::kPositive}}, inputs[0], kTgt,
                      *aligner, {}, "es");
  EXPECT_EQ(*log, std::vector<std::string>{std::string(kTgt) + " <SEP> belt sushi"});
  EXPECT_EQ(c.triplets[0].aspect, "sushi con cinta");
  EXPECT_EQ(c.triplets[0].opinion, "muy recomendable");
  EXPECT_EQ(c.n_unalignable, 0u);
}

Triplet T(std::string a, std::string o, Polarity p = Polarity::kPositive) {
  return {std::move(a), std::move(o), p};
}

TEST(VoteTest, SingleAndUnanimous) {
  TtaConfig config;
  const std::vector<Triplet> list = {T("food", "good"), T("food", "good")};
  EXPECT_EQ(Vote({list}, config), list);
  EXPECT_EQ(Vote({list, list, list}, config), list);
  EXPECT_THROW(Vote({}, config), std::invalid_argument);
}

TEST(VoteTest, SupportThreshold) {
  TtaConfig config;
  const Triplet a = T("food", "good");
  const Triplet b = T("staff", "rude", Polarity::kNegative);
  // a in two of three lists: support 2 >= ceil(1.5); b in one: dropped.
  EXPECT_EQ(Vote({{a}, {a, b}, {}}, config), std::vector<Triplet>{a});
  config.min_support_fraction = 0.3;
  EXPECT_EQ(Vote({{a}, {a, b}, {}}, config), (std::vector<Triplet>{a, b}));
  config.min_support_fraction = 1.0;
  EXPECT_TRUE(Vote({{a}, {a, b}, {}}, config).empty());
}

TEST(VoteTest, ClustersSimilarTripletsAndPicksRepresentative) {
  TtaConfig config;
  const std::vector<std::vector<Triplet>> lists = {
      {T("the sushi", "recommended")},
      {T("sushi", "recommended")},
      {T("the sushi", "Recommended")},
      {T("the sushi", "recommended", Polarity::kNegative)}};
  // sim(sushi, the sushi) = 1/2*1/2 + 1/2 = 0.75 one way, 1.0 the other.
  const auto out = Vote(lists, config);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].aspect, "the sushi");
  EXPECT_EQ(out[0].opinion, "recommended");
  EXPECT_EQ(out[0].polarity, Polarity::kPositive);
}

TEST(VoteTest, SurfaceTieBreaks) {
  TtaConfig config;
  config.min_support_fraction = 0.0;
  // One vote each: longest wins, then lexicographically smallest.
  auto out = Vote({{T("Food", "good")}, {T("food.", "good")}, {}}, config);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].aspect, "food.");
  out = Vote({{T("Food", "good")}, {T("food", "good")}, {}}, config);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].aspect, "Food");
}

TEST(VoteTest, TripletsFromOneListAreNotMerged) {
  TtaConfig config;
  const std::vector<Triplet> list = {T("sushi", "good"), T("the sushi", "good")};
  const auto out = Vote({list, list, {T("x", "y")}}, config);
  EXPECT_EQ(out, list);
}

TEST(VoteTest, OrderedByFirstAppearance) {
  TtaConfig config;
  const Triplet a = T("food", "good");
  const Triplet b = T("staff", "rude", Polarity::kNegative);
  EXPECT_EQ(Vote({{b}, {a, b}, {a}}, config), (std::vector<Triplet>{b, a}));
}

std::vector<std::vector<Triplet>> RandomLists(std::mt19937_64& rng) {
  const int k = std::uniform_int_distribution<int>(1, 6)(rng);
  std::vector<Triplet> pool;
  for (int i = 0; i < 4; ++i) pool.push_back(testing::RandomTriplet(rng, 5, 2));
  std::vector<std::vector<Triplet>> lists(k);
  for (auto& l : lists) {
    const int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < n; ++i) {
      l.push_back(std::uniform_int_distribution<int>(0, 2)(rng) == 0
                      ? testing::RandomTriplet(rng, 5, 2)
                      : pool[std::uniform_int_distribution<std::size_t>(0, 3)(rng)]);
    }
  }
  return lists;
}

std::multiset<std::tuple<Polarity, std::string, std::string>> AsSet(
    const std::vector<Triplet>& ts) {
  std::multiset<std::tuple<Polarity, std::string, std::string>> out;
  for (const auto& t : ts) out.emplace(t.polarity, t.aspect, t.opinion);
  return out;
}

TEST(VoteTest, PermutationInvariantAndMonotone) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    auto lists = RandomLists(rng);
    TtaConfig config;
    const auto base = Vote(lists, config);
    auto shuffled = lists;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(AsSet(Vote(shuffled, config)), AsSet(base));

    std::set<std::tuple<Polarity, std::string, std::string>> previous;
    for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      config.min_support_fraction = f;
      const auto out = AsSet(Vote(lists, config));
      const std::set<std::tuple<Polarity, std::string, std::string>> now(out.begin(), out.end());
      if (f > 0.0) {
        EXPECT_TRUE(std::includes(previous.begin(), previous.end(), now.begin(), now.end()));
      }
      previous = now;
    }
    // Polarity of every output appears in some input list.
    std::set<Polarity> seen;
    for (const auto& l : lists) {
      for (const auto& t : l) seen.insert(t.polarity);
    }
    for (const auto& t : base) EXPECT_TRUE(seen.count(t.polarity));
  }
}

TEST(TtaTest, ConfigValidation) {
  TtaConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.max_ngram = 0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = {};
  c.vote_threshold = 1.5;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = {};
  c.min_support_fraction = -0.1;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
}

TEST(TtaTest, OracleBackendsRecoverGold) {
  const auto data = testing::MakeSyntheticBilingual(40, 21);
  testing::ProjectingOracle oracle(data);
  DictionaryTranslator translator(data.lexicon, "en", "es");
  DictionaryAligner aligner(data.lexicon);
  const TtaBackends backends{&translator, &aligner, &oracle};
  TtaConfig config;
  const auto preds = TtaPredictCorpus(data.target, backends, config, 4);
  TripletLists p;
  TripletLists g;
  std::size_t augmented = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    EXPECT_EQ(preds[i].id, data.target.samples[i].id);
    EXPECT_FALSE(preds[i].diagnostics.fell_back);
    augmented += preds[i].diagnostics.n_augmented;
    p.push_back(preds[i].triplets);
    g.push_back(data.target.samples[i].gold);
  }
  EXPECT_GT(augmented, 0u);
  EXPECT_EQ(WeightedScores(p, g).f1, 1.0);
}

TEST(TtaTest, NoneAlignerEqualsPlainPrediction) {
  const auto data = testing::MakeSyntheticBilingual(30, 22);
  testing::ProjectingOracle oracle(data);
  DictionaryTranslator translator(data.lexicon, "en", "es");
  auto none = testing::NoneAligner();
  const auto tta = TtaPredictCorpus(data.target, {&translator, none.get(), &oracle}, {}, 2);
  const auto plain = PredictCorpus(data.target, oracle, 2);
  ASSERT_EQ(tta.size(), plain.size());
  for (std::size_t i = 0; i < tta.size(); ++i) {
    EXPECT_EQ(tta[i].triplets, plain[i].triplets);
    EXPECT_EQ(tta[i].diagnostics.n_augmented, 0u);
  }
}

TEST(TtaTest, BackendFailureFallsBackUnlessStrict) {
  const auto data = testing::MakeSyntheticBilingual(5, 23);
  testing::ProjectingOracle oracle(data);
  FunctionBackend broken(
      "mock:broken",
      [](const TranslationRequest&) -> std::vector<std::string> {
        throw TransportError("down");
      },
      nullptr);
  DictionaryAligner aligner(data.lexicon);
  const Sample& s = data.target.samples[0];
  const Prediction p = TtaPredict(s, {&broken, &aligner, &oracle}, {}, "es");
  EXPECT_TRUE(p.diagnostics.fell_back);
  EXPECT_EQ(p.triplets, s.gold);
  TtaConfig strict;
  strict.strict = true;
  EXPECT_THROW(TtaPredict(s, {&broken, &aligner, &oracle}, strict, "es"), BackendError);
}

TEST(TtaTest, PredictionsRoundTrip) {
  std::vector<Prediction> preds(2);
  preds[0].id = "a";
  preds[0].triplets = {T("x, y", "(z)")};
  preds[0].diagnostics.n_augmented = 4;
  preds[1].id = "b";
  preds[1].diagnostics.fell_back = true;
  const std::string text = PredictionsToString(preds, {});
  const auto back = PredictionsFromString(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].triplets, preds[0].triplets);
  EXPECT_EQ(back[0].diagnostics.n_augmented, 4u);
  EXPECT_TRUE(back[1].diagnostics.fell_back);
  EXPECT_EQ(PredictionsToString(back, {}), text);
  preds[1].id = "a";
  EXPECT_THROW(PredictionsFromString(PredictionsToString(preds, {})), DataError);
}

}  // namespace
}  // namespace ttcsw
