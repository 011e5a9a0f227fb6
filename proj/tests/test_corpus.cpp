#include <catch2/catch.hpp>

#include <random>
#include <set>

#include "topicsum/corpus.hpp"

#include "support/test_util.hpp"

using namespace topicsum;

TEST_CASE("make_document segments, tokenizes and truncates") {
  const Document doc = make_document("d1", "A b. C d. E f.", "src", 2);
  REQUIRE(doc.sentences.size() == 2);
  CHECK(doc.sentences[0].text == "A b.");
  CHECK(doc.sentences[0].tokens == std::vector<std::string>{"a", "b"});
  CHECK(doc.sentences[0].index == 0);
  CHECK(doc.sentences[1].index == 1);
  CHECK(doc.source_path == "src");
}

TEST_CASE("make_document rejects empty documents") {
  CHECK_THROWS_AS(make_document("d1", ""), DataError);
  CHECK_THROWS_AS(make_document("d1", "   ..!  "), DataError);
}

TEST_CASE("make_document drops token-free sentences") {
  // "..." alone would be a sentence with no tokens.
  const Document doc = make_document("d1", "... Hello there. Bye now.");
  REQUIRE(doc.sentences.size() == 2);
  CHECK(doc.sentences[0].tokens == std::vector<std::string>{"hello", "there"});
}

TEST_CASE("extract_entities finds capitalized runs") {
  const Document doc = tsup::doc_from_sentences({"he met Jurgen Klinsmann on Friday"});
  const std::vector<EntitySpan> spans = extract_entities(doc);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].surface == "Jurgen Klinsmann");
  CHECK(spans[0].token_start == 2);
  CHECK(spans[0].token_len == 2);
  CHECK(spans[1].surface == "Friday");
}

TEST_CASE("extract_entities ignores lowercase sentences") {
  const Document doc = tsup::doc_from_sentences({"the cat sat"});
  CHECK(extract_entities(doc).empty());
}

TEST_CASE("extract_entities keeps sentence-initial runs of length >= 2") {
  const Document doc = tsup::doc_from_sentences({"United States named a coach"});
  const std::vector<EntitySpan> spans = extract_entities(doc);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].surface == "United States");
  CHECK(spans[0].token_start == 0);
  CHECK(spans[0].token_len == 2);

  // A single capitalized word at sentence start is not an entity.
  const Document doc2 = tsup::doc_from_sentences({"Friday was quiet"});
  CHECK(extract_entities(doc2).empty());
}

TEST_CASE("entity spans stay within token bounds") {
  std::mt19937 rng(23);
  static const std::vector<std::string> words = {"the",    "Mayor", "Ellen", "shaw", "bridge",
                                                 "Harbor", "and",   "City",  "of",   "Townsville"};
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> sent_len(1, 8);
  std::uniform_int_distribution<int> n_sents(1, 5);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> sentences;
    const int n = n_sents(rng);
    for (int s = 0; s < n; ++s) {
      std::string text;
      const int len = sent_len(rng);
      for (int k = 0; k < len; ++k) {
        if (!text.empty()) text += ' ';
        text += words[pick(rng)];
      }
      sentences.push_back(text);
    }
    const Document doc = tsup::doc_from_sentences(sentences);
    for (const EntitySpan& span : extract_entities(doc)) {
      REQUIRE(span.sentence_index < static_cast<int>(doc.sentences.size()));
      const Sentence& s = doc.sentences[static_cast<size_t>(span.sentence_index)];
      CHECK(span.token_len >= 1);
      CHECK(span.token_start >= 0);
      CHECK(span.token_start + span.token_len <= static_cast<int>(s.tokens.size()));
    }
  }
}

TEST_CASE("generate_topics orders by frequency then first occurrence") {
  const Document doc = tsup::doc_from_sentences(
      {"fans of City cheered", "the City squad met Vieira", "later Vieira thanked City"});
  const std::vector<TopicInstance> topics = generate_topics(doc, 2);
  REQUIRE(topics.size() == 2);
  CHECK(topics[0].topic_text == "City");
  CHECK(topics[1].topic_text == "Vieira");
  CHECK(topics[0].origin == TopicOrigin::generated);
  REQUIRE(topics[0].topic_entities.size() == 1);
  CHECK(topics[0].topic_entities[0] == "City");
}

TEST_CASE("generate_topics with no entities yields nothing") {
  const Document doc = tsup::doc_from_sentences({"the cat sat", "it was fine"});
  CHECK(generate_topics(doc, 5).empty());
}

TEST_CASE("generate_topics respects max_topics and distinct-surface bounds") {
  std::mt19937 rng(29);
  static const std::vector<std::string> words = {"alpha", "Beta", "Gamma", "delta", "Epsilon",
                                                 "zeta"};
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> sentences;
    for (int s = 0; s < 4; ++s) {
      std::string text = "so";
      for (int k = 0; k < 6; ++k) text += " " + words[pick(rng)];
      sentences.push_back(text);
    }
    const Document doc = tsup::doc_from_sentences(sentences);
    const auto spans = extract_entities(doc);
    std::set<std::string> distinct;
    for (const auto& span : spans) distinct.insert(to_lower(span.surface));
    for (int max_topics : {1, 2, 5}) {
      const auto topics = generate_topics(doc, max_topics);
      CHECK(topics.size() <= static_cast<size_t>(max_topics));
      CHECK(topics.size() <= distinct.size());
    }
  }
}

TEST_CASE("generate_topics on the Klinsmann lead sentence includes United States") {
  const Document doc = make_document(
      "table1",
      "(cnn) -- the United States have named former Germany captain Jurgen Klinsmann as their "
      "new national coach, just a day after sacking Bob Bradley.");
  const std::vector<TopicInstance> topics = generate_topics(doc, 5);
  REQUIRE(!topics.empty());
  bool found = false;
  for (const TopicInstance& t : topics) found = found || t.topic_text == "United States";
  CHECK(found);
}

TEST_CASE("entities_from_topic_text accepts initial runs of any length") {
  CHECK(entities_from_topic_text("United States") == std::vector<std::string>{"United States"});
  CHECK(entities_from_topic_text("City") == std::vector<std::string>{"City"});
  CHECK(entities_from_topic_text("climate change").empty());
  CHECK(entities_from_topic_text("visit to Lake Murano") == std::vector<std::string>{"Lake Murano"});
}
