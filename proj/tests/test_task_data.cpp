#include <doctest.h>

#include <random>

#include "selftrans/dataset.hpp"
#include "selftrans/util.hpp"
#include "test_support.hpp"

using namespace selftrans;
using testsup::TempDir;
using testsup::write_file;

TEST_CASE("load_task maps XNLI records into the instance model") {
  TempDir dir("xnli");
  write_file(dir.file("xnli.en.jsonl"),
             R"({"premise": "p", "hypothesis": "h", "label": 0})"
             "\n");
  auto instances = load_task(dir.file("xnli.en.jsonl"), "xnli", testsup::en());
  REQUIRE(instances.size() == 1);
  const auto& inst = instances[0];
  CHECK(inst.task_id == "xnli/en/1");
  CHECK(inst.kind == TaskKind::multiple_choice);
  CHECK(inst.field("sentence1") == "p");
  CHECK(inst.field("sentence2") == "h");
  REQUIRE(inst.candidates.size() == 3);
  CHECK(inst.candidates == std::vector<std::string>{"Yes", "Also", "No"});
  CHECK(inst.gold_index == 0);
}

TEST_CASE("load_task maps XCOPA records with the question_type field") {
  TempDir dir("xcopa");
  write_file(dir.file("xcopa.en.jsonl"),
             R"({"premise": "s", "choice1": "a", "choice2": "b", "question": "cause", "label": 1})"
             "\n");
  auto instances = load_task(dir.file("xcopa.en.jsonl"), "xcopa", testsup::en());
  REQUIRE(instances.size() == 1);
  CHECK(instances[0].field("question_type") == "cause");
  CHECK(instances[0].candidates == std::vector<std::string>{"a", "b"});
  CHECK(instances[0].gold_index == 1);
}

TEST_CASE("load_task maps XStoryCloze and MGSM records") {
  TempDir dir("more");
  write_file(dir.file("xstorycloze.en.jsonl"),
             R"({"input_sentence_1": "s1", "input_sentence_2": "s2", "input_sentence_3": "s3", "input_sentence_4": "s4", "sentence_quiz1": "e1", "sentence_quiz2": "e2", "answer_right_ending": 2})"
             "\n");
  auto story = load_task(dir.file("xstorycloze.en.jsonl"), "xstorycloze", testsup::en());
  REQUIRE(story.size() == 1);
  CHECK(story[0].field("context") == "s1 s2 s3 s4");
  CHECK(story[0].gold_index == 1);

  write_file(dir.file("mgsm.en.jsonl"), R"({"question": "1+1?", "answer_number": 2})"
                                        "\n");
  auto mgsm = load_task(dir.file("mgsm.en.jsonl"), "mgsm", testsup::en());
  REQUIRE(mgsm.size() == 1);
  CHECK(mgsm[0].kind == TaskKind::generative);
  CHECK(mgsm[0].gold_answer == "2");
  CHECK(mgsm[0].candidates.empty());
}

TEST_CASE("load_task errors name the line and missing field") {
  TempDir dir("err");
  write_file(dir.file("xnli.en.jsonl"), R"({"premise": "p", "hypothesis": "h"})"
                                        "\n");
  try {
    load_task(dir.file("xnli.en.jsonl"), "xnli", testsup::en());
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 1: missing field label") != std::string::npos);
  }
}

TEST_CASE("load_task rejects unknown tasks, listing the supported ones") {
  TempDir dir("unk");
  write_file(dir.file("x.jsonl"), "{}\n");
  try {
    load_task(dir.file("x.jsonl"), "nope", testsup::en());
    FAIL("expected DataError");
  } catch (const DataError& e) {
    std::string msg = e.what();
    CHECK(msg.find("unknown task") != std::string::npos);
    CHECK(msg.find("xnli") != std::string::npos);
    CHECK(msg.find("mgsm") != std::string::npos);
  }
}

TEST_CASE("loading the same file twice is deterministic") {
  TempDir dir("det");
  std::string content;
  for (int i = 0; i < 5; ++i)
    content += R"({"premise": "p)" + std::to_string(i) +
               R"(", "hypothesis": "h", "label": 1})" + "\n";
  write_file(dir.file("xnli.en.jsonl"), content);
  auto a = load_task(dir.file("xnli.en.jsonl"), "xnli", testsup::en());
  auto b = load_task(dir.file("xnli.en.jsonl"), "xnli", testsup::en());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].task_id == b[i].task_id);
    CHECK(a[i].fields == b[i].fields);
    CHECK(a[i].candidates == b[i].candidates);
    CHECK(a[i].gold_index == b[i].gold_index);
  }
}

TEST_CASE("load_parallel_dev pairs aligned files in order") {
  TempDir dir("flores");
  std::string src, eng;
  for (int i = 0; i < 10; ++i) {
    src += "frase " + std::to_string(i) + "\n";
    eng += "sentence " + std::to_string(i) + "\n";
  }
  write_file(dir.file("es.dev"), src);
  write_file(dir.file("en.dev"), eng);
  auto pairs = load_parallel_dev(dir.path(), testsup::es());
  REQUIRE(pairs.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(pairs[i].position == i);
    CHECK(pairs[i].source_text == "frase " + std::to_string(i));
    CHECK(pairs[i].english_text == "sentence " + std::to_string(i));
  }

  SUBCASE("empty files give an empty list") {
    write_file(dir.file("fr.dev"), "");
    write_file(dir.file("en.dev"), "");
    CHECK(load_parallel_dev(dir.path(), testsup::fr()).empty());
  }

  SUBCASE("misaligned counts are an error reporting both") {
    write_file(dir.file("fr.dev"), "a\nb\nc\n");
    write_file(dir.file("en.dev"), "x\ny\n");
    try {
      load_parallel_dev(dir.path(), testsup::fr());
      FAIL("expected DataError");
    } catch (const DataError& e) {
      std::string msg = e.what();
      CHECK(msg.find("3") != std::string::npos);
      CHECK(msg.find("2") != std::string::npos);
    }
  }
}

namespace {

std::vector<ParallelSentencePair> pairs_with_lengths(const std::vector<int>& lengths) {
  std::vector<ParallelSentencePair> pairs;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    ParallelSentencePair p;
    p.source_text = std::string(lengths[i], 'x');
    p.english_text = "e" + std::to_string(i);
    p.language = testsup::es();
    p.position = static_cast<int>(i);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace

TEST_CASE("select_translation_shots takes the first k short-enough pairs") {
  auto pairs = pairs_with_lengths({120, 80, 101, 50, 60, 99});
  auto sel = select_translation_shots(pairs, 4, 100);
  REQUIRE(sel.shots.size() == 4);
  std::vector<int> positions;
  for (const auto& s : sel.shots) positions.push_back(s.position);
  CHECK(positions == std::vector<int>{1, 3, 4, 5});
  CHECK_FALSE(sel.shortfall);

  SUBCASE("k = 0 selects nothing") {
    auto none = select_translation_shots(pairs, 0, 100);
    CHECK(none.shots.empty());
    CHECK_FALSE(none.shortfall);
  }

  SUBCASE("exhausted split sets the shortfall flag") {
    auto all_long = select_translation_shots(pairs_with_lengths({150, 200, 101}), 4, 100);
    CHECK(all_long.shots.empty());
    CHECK(all_long.shortfall);
  }
}

TEST_CASE("shot length cutoff counts Unicode scalars, not bytes") {
  // 60 two-byte characters: 120 bytes but only 60 scalar values.
  ParallelSentencePair p;
  for (int i = 0; i < 60; ++i) p.source_text += "é";
  p.english_text = "e";
  p.language = testsup::es();
  p.position = 0;
  auto sel = select_translation_shots({p}, 1, 100);
  CHECK(sel.shots.size() == 1);
}

TEST_CASE("shot selection equals the brute-force filter (property)") {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> n_dist(0, 40), len_dist(0, 160), k_dist(0, 8);
    int n = n_dist(rng);
    std::vector<int> lengths;
    for (int i = 0; i < n; ++i) lengths.push_back(len_dist(rng));
    // zero-length sources are not valid pairs; keep them positive
    for (auto& l : lengths) l = std::max(1, l);
    int k = k_dist(rng);
    auto pairs = pairs_with_lengths(lengths);
    auto sel = select_translation_shots(pairs, k, 100);

    // independent brute force: first k with length <= 100, in order
    std::vector<int> expected;
    for (int i = 0; i < n && static_cast<int>(expected.size()) < k; ++i)
      if (lengths[i] <= 100) expected.push_back(i);

    std::vector<int> got;
    for (const auto& s : sel.shots) got.push_back(s.position);
    REQUIRE(got == expected);
    CHECK(sel.shortfall == (static_cast<int>(expected.size()) < k));
    // subsequence in position order with the length bound
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1] < got[i]);
    for (const auto& s : sel.shots) CHECK(utf8_length(s.source_text) <= 100);
  }
}

TEST_CASE("resource classes come from the shipped table") {
  auto reg = LanguageRegistry::load(testsup::data_dir() / "languages/resource_classes.txt");
  CHECK(reg.resource_class_of("en") == ResourceClass::high);
  CHECK(reg.resource_class_of("sw") == ResourceClass::low);
  CHECK(reg.resource_class_of("my") == ResourceClass::low);
  CHECK(reg.resource_class_of("zh") == ResourceClass::high);
  CHECK(reg.get("es").display_name == "Spanish");
  try {
    reg.resource_class_of("xx");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("resource-class table") != std::string::npos);
  }
}

TEST_CASE("exemplar files must hold exactly eight entries with numbers") {
  TempDir dir("ex");
  std::string good;
  for (int i = 0; i < 8; ++i)
    good += R"({"question": "q)" + std::to_string(i) + R"(", "answer": "a = )" +
            std::to_string(i) + R"(."})" + "\n";
  write_file(dir.file("mgsm_en.jsonl"), good);
  auto exemplars = load_exemplars(dir.file("mgsm_en.jsonl"), testsup::en());
  CHECK(exemplars.size() == 8);

  write_file(dir.file("short.jsonl"), R"({"question": "q", "answer": "1"})"
                                      "\n");
  CHECK_THROWS_AS(load_exemplars(dir.file("short.jsonl"), testsup::en()), DataError);
}

TEST_CASE("shipped English exemplars load") {
  auto exemplars =
      load_exemplars(testsup::data_dir() / "exemplars/mgsm_en.jsonl", testsup::en());
  CHECK(exemplars.size() == 8);
}
