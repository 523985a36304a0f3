#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/text.hpp"

using namespace socio;

namespace {

RiskFactorConfig twelve_categories() {
    RiskFactorConfig config;
    for (int i = 1; i <= 12; ++i) {
        RiskCategory cat;
        cat.name = "cat" + std::to_string(i);
        cat.phrases = {{"placeholder" + std::to_string(i)}};
        config.categories.push_back(std::move(cat));
    }
    return config;
}

} // namespace

TEST_CASE("tokenizer lowercases and splits on punctuation") {
    CHECK(tokenize("Hello, World!") == std::vector<std::string>{"hello", "world"});
    CHECK(tokenize("abc123 42") == std::vector<std::string>{"abc123", "42"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("...") == std::vector<std::string>{});
}

TEST_CASE("tokenizer keeps intra-word apostrophes only") {
    CHECK(tokenize("I'm fine, don't ask") ==
          std::vector<std::string>{"i'm", "fine", "don't", "ask"});
    CHECK(tokenize("'quoted'") == std::vector<std::string>{"quoted"});
    CHECK(tokenize("rock 'n' roll") == std::vector<std::string>{"rock", "n", "roll"});
}

TEST_CASE("tokenizer treats sigils as token starts") {
    CHECK(tokenize("@Sam sent #Help") == std::vector<std::string>{"@sam", "sent", "#help"});
    CHECK(tokenize("e@mail") == std::vector<std::string>{"e", "@mail"});
    CHECK(tokenize("@ # @@x") == std::vector<std::string>{"@x"});
}

TEST_CASE("tokenizer passes non-ASCII bytes through") {
    CHECK(tokenize("Caf\xc3\xa9 time") == std::vector<std::string>{"caf\xc3\xa9", "time"});
}

TEST_CASE("corpus and term stats") {
    auto corpus = build_corpus({"good good bad", "good"});
    CHECK(corpus.documents.size() == 2);
    CHECK(corpus.total_tokens == 4);
    CHECK(corpus.vocabulary.at("good") == 3);
    CHECK(corpus.vocabulary.at("bad") == 1);

    auto stats = term_stats(corpus);
    CHECK(stats.at("good").count == 3);
    CHECK(stats.at("good").salience == doctest::Approx(0.75));
    CHECK(stats.at("bad").salience == doctest::Approx(0.25));

    auto empty = build_corpus({"", "!!"});
    CHECK_THROWS_AS(term_stats(empty), undefined_metric_error);
}

TEST_CASE("sentiment ratio sentinels") {
    auto ok = sentiment_ratio(0.012, 0.061);
    REQUIRE(ok.value.has_value());
    CHECK(*ok.value == doctest::Approx(-0.706).epsilon(0.005));
    CHECK(ok.reason.empty());

    auto den = sentiment_ratio(0.5, 0.0);
    CHECK(!den.value.has_value());
    CHECK(den.reason == "zero_denominator");

    auto num = sentiment_ratio(0.0, 0.5);
    CHECK(!num.value.has_value());
    CHECK(num.reason == "zero_numerator");
}

TEST_CASE("sentiment scores count lexicon hits per token") {
    LexiconSet lex;
    lex.positive = {"good", "fine"};
    lex.negative = {"bad"};
    lex.anger_mild = {"annoyed"};
    lex.anger_typical = {"angry"};
    lex.anger_violent = {"fight"};
    lex.calm = {"fine"}; // shared with positive: counts toward both

    auto corpus = build_corpus({"good fine bad bad", "angry fight words"});
    auto report = sentiment_scores(corpus, lex);
    CHECK(report.s_pos == doctest::Approx(2.0 / 7.0));
    CHECK(report.s_neg == doctest::Approx(2.0 / 7.0));
    CHECK(report.s_calm == doctest::Approx(1.0 / 7.0));
    CHECK(report.s_anger_typical == doctest::Approx(1.0 / 7.0));
    CHECK(report.s_anger_violent == doctest::Approx(1.0 / 7.0));
    CHECK(report.s_anger_mild == 0.0);
    REQUIRE(report.r_sent.value.has_value());
    CHECK(*report.r_sent.value == doctest::Approx(0.0));
    REQUIRE(report.r_angr.value.has_value());
    CHECK(*report.r_angr.value == doctest::Approx(std::log10(0.5)));

    CHECK_THROWS_AS(sentiment_scores(build_corpus({}), lex), undefined_metric_error);
}

TEST_CASE("lexicon loading trims, folds, and validates") {
    std::string dir = "/tmp/lex_ok";
    std::remove((dir + "/positive.txt").c_str());
    std::filesystem::create_directories(dir);
    auto put = [&](const char* name, const char* body) {
        std::ofstream out(dir + "/" + name, std::ios::binary);
        out << body;
    };
    put("positive.txt", "HAPPY\r\n  joy  \n\n");
    put("negative.txt", "sad\n");
    put("anger_mild.txt", "annoyed\n");
    put("anger_typical.txt", "angry\n");
    put("anger_violent.txt", "fight\n");
    put("calm.txt", "peace\n");

    auto lex = load_lexicons(dir);
    CHECK(lex.positive == std::set<std::string>{"happy", "joy"});
    CHECK(lex.calm.count("peace") == 1);

    put("calm.txt", "\n  \n");
    CHECK_THROWS_AS(load_lexicons(dir), config_error);
    std::remove((dir + "/calm.txt").c_str());
    CHECK_THROWS_WITH_AS(load_lexicons(dir), doctest::Contains("calm.txt"), config_error);
}

TEST_CASE("bigrams stay within documents and sort by count then pair") {
    auto corpus = build_corpus({"a b a b", "b a"});
    auto stats = bigram_stats(corpus, 1);
    REQUIRE(stats.size() == 2);
    CHECK(stats[0].w1 == "a");
    CHECK(stats[0].w2 == "b");
    CHECK(stats[0].count == 2);
    CHECK(stats[1].w1 == "b");
    CHECK(stats[1].w2 == "a");
    CHECK(stats[1].count == 2);
    CHECK(stats[0].salience == doctest::Approx(0.5));
    CHECK(stats[0].mutual_information == doctest::Approx(1.0));

    CHECK(bigram_stats(corpus, 3).empty());
    CHECK(bigram_stats(build_corpus({"x", "y"}), 1).empty());
}

TEST_CASE("bigram mutual information matches a direct computation") {
    auto corpus = build_corpus({"u v w u v", "w w u"});
    auto stats = bigram_stats(corpus, 1);
    double total_bigrams = 0;
    for (const auto& doc : corpus.documents)
        total_bigrams += doc.size() > 1 ? double(doc.size() - 1) : 0.0;
    for (const auto& s : stats) {
        double pj = double(s.count) / total_bigrams;
        double p1 = double(corpus.vocabulary.at(s.w1)) / double(corpus.total_tokens);
        double p2 = double(corpus.vocabulary.at(s.w2)) / double(corpus.total_tokens);
        CHECK(s.mutual_information == doctest::Approx(std::log2(pj / (p1 * p2))).epsilon(1e-12));
    }
}

TEST_CASE("risk config loading enforces shape") {
    auto write_config = [](const std::string& path, int n_categories, bool bad_phrase) {
        std::ofstream out(path);
        out << "{\"categories\":[";
        for (int i = 0; i < n_categories; ++i) {
            if (i) out << ",";
            out << "{\"name\":\"cat" << i << "\",\"phrases\":[";
            if (bad_phrase && i == 0)
                out << "\"...\"";
            else
                out << "\"token" << i << "\"";
            out << "]}";
        }
        out << "]}";
    };
    write_config("/tmp/risk12.json", 12, false);
    auto config = load_risk_config("/tmp/risk12.json");
    CHECK(config.categories.size() == 12);
    CHECK(config.categories[3].name == "cat3");
    CHECK(config.categories[3].phrases == std::vector<std::vector<std::string>>{{"token3"}});

    write_config("/tmp/risk11.json", 11, false);
    CHECK_THROWS_AS(load_risk_config("/tmp/risk11.json"), config_error);
    write_config("/tmp/risk_badphrase.json", 12, true);
    CHECK_THROWS_AS(load_risk_config("/tmp/risk_badphrase.json"), config_error);
    CHECK_THROWS_AS(load_risk_config("/tmp/risk_missing_file.json"), config_error);
}

TEST_CASE("risk matching finds contiguous phrases and covers tokens once") {
    auto config = twelve_categories();
    config.categories[0].phrases = {{"being", "bullied"}};
    config.categories[1].phrases = {{"a", "b"}, {"b", "c"}};

    std::vector<std::vector<std::string>> docs = {
        tokenize("I was being bullied at school"),
        tokenize("bullied being"), // wrong order: no match
        tokenize("a b c"),
    };
    auto report = risk_factor_match(docs, config);
    REQUIRE(report.categories.size() == 12);
    CHECK(report.total_tokens == 6 + 2 + 3);
    CHECK(report.categories[0].matched_tweets == 1);
    CHECK(report.categories[0].salience == doctest::Approx(2.0 / 11.0));
    CHECK(report.categories[1].matched_tweets == 1);
    CHECK(report.categories[1].salience == doctest::Approx(3.0 / 11.0)); // overlap counted once
    CHECK(report.categories[2].matched_tweets == 0);

    RiskFactorConfig eleven;
    eleven.categories.assign(config.categories.begin(), config.categories.end() - 1);
    CHECK_THROWS_AS(risk_factor_match(docs, eleven), config_error);
}

TEST_CASE("risk matching handles empty corpora") {
    auto report = risk_factor_match({}, twelve_categories());
    CHECK(report.total_tokens == 0);
    for (const auto& cat : report.categories) {
        CHECK(cat.matched_tweets == 0);
        CHECK(cat.salience == 0.0);
    }
}

TEST_CASE("adding a document never decreases matched counts") {
    auto config = twelve_categories();
    config.categories[0].phrases = {{"p", "q"}};
    config.categories[5].phrases = {{"q"}};
    config.categories[11].phrases = {{"r", "p", "q"}};

    std::mt19937_64 eng(404);
    std::uniform_int_distribution<int> len(0, 5);
    const std::vector<std::string> pool = {"p", "q", "r", "s"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);

    std::vector<std::vector<std::string>> docs;
    std::vector<std::uint64_t> prev(12, 0);
    for (int step = 0; step < 300; ++step) {
        std::vector<std::string> doc;
        for (int i = len(eng); i > 0; --i) doc.push_back(pool[pick(eng)]);
        docs.push_back(std::move(doc));
        auto report = risk_factor_match(docs, config);
        for (std::size_t c = 0; c < 12; ++c) {
            CHECK(report.categories[c].matched_tweets >= prev[c]);
            prev[c] = report.categories[c].matched_tweets;
        }
    }
}

TEST_CASE("shipped risk config matches the published fixtures") {
    auto config = load_risk_config(std::string(SOCIO_SOURCE_DIR) + "/data/risk_factors.json");
    auto find = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < config.categories.size(); ++i)
            if (config.categories[i].name == name) return i;
        REQUIRE(false);
        return 0;
    };
    std::vector<std::vector<std::string>> docs = {
        tokenize("having thoughts of killing myself again"),
        tokenize("tired of being bullied every day"),
        tokenize("how do I stop cutting myself"),
    };
    auto report = risk_factor_match(docs, config);
    CHECK(report.categories[find("Ideation")].matched_tweets >= 1);
    CHECK(report.categories[find("Bullying")].matched_tweets >= 1);
    CHECK(report.categories[find("Self harm")].matched_tweets >= 1);
}
