#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace socio {

// Lowercases and splits on non-alphanumerics. Apostrophes survive inside a
// word ("i'm"); `@` and `#` survive as sigils at token start ("@sam",
// "#help"). Bytes outside ASCII are treated as word characters, so UTF-8
// sequences pass through intact.
std::vector<std::string> tokenize(std::string_view text);

struct TokenCorpus {
    std::vector<std::vector<std::string>> documents; // one per tweet, input order
    std::map<std::string, std::uint64_t> vocabulary;
    std::uint64_t total_tokens = 0;
};

TokenCorpus build_corpus(const std::vector<std::string>& texts);

struct TermStat {
    std::uint64_t count = 0;
    double salience = 0.0; // count / total_tokens
};

// Per-token counts and salience over the whole vocabulary.
// undefined_metric_error on an empty corpus.
std::map<std::string, TermStat> term_stats(const TokenCorpus& corpus);

// Six word-per-line lists loaded from a directory (<name>.txt). A missing or
// empty file throws config_error naming the file.
struct LexiconSet {
    std::set<std::string> positive;
    std::set<std::string> negative;
    std::set<std::string> anger_mild;
    std::set<std::string> anger_typical;
    std::set<std::string> anger_violent;
    std::set<std::string> calm;
};

LexiconSet load_lexicons(const std::string& dir);

// log10 ratio that reports, rather than throws, when the logarithm does not
// exist; `reason` is empty exactly when `value` is set.
struct RatioValue {
    std::optional<double> value;
    std::string reason;
};

RatioValue sentiment_ratio(double numerator, double denominator);

struct SentimentReport {
    double s_pos = 0.0;
    double s_neg = 0.0;
    double s_anger_mild = 0.0;
    double s_anger_typical = 0.0;
    double s_anger_violent = 0.0;
    double s_calm = 0.0;
    RatioValue r_sent; // log10(s_pos / s_neg)
    RatioValue r_angr; // log10(s_calm / (mild + typical + violent))
};

// Matched-token fraction per lexicon; a token may count toward several
// lexicons. undefined_metric_error on an empty corpus.
SentimentReport sentiment_scores(const TokenCorpus& corpus, const LexiconSet& lexicons);

struct BigramStat {
    std::string w1, w2;
    std::uint64_t count = 0;
    double salience = 0.0;           // count / total bigrams
    double mutual_information = 0.0; // log2(p(w1,w2) / (p(w1) p(w2)))
};

// Adjacent in-document bigrams with count >= min_count, ordered by count
// descending then pair ascending. Empty when no document has two tokens.
std::vector<BigramStat> bigram_stats(const TokenCorpus& corpus, std::uint64_t min_count);

struct RiskCategory {
    std::string name;
    std::vector<std::vector<std::string>> phrases; // tokenized identifiers
};

struct RiskFactorConfig {
    std::vector<RiskCategory> categories;
};

// JSON file with exactly twelve categories, each carrying at least one
// identifier phrase; anything else throws config_error.
RiskFactorConfig load_risk_config(const std::string& path);

struct RiskCategoryReport {
    std::string name;
    std::uint64_t matched_tweets = 0;
    double salience = 0.0; // fraction of corpus tokens covered by the phrases
};

struct RiskFactorReport {
    std::vector<RiskCategoryReport> categories; // config order
    std::uint64_t total_tokens = 0;
};

// A document matches a category when any identifier phrase occurs as a
// contiguous token subsequence.
RiskFactorReport risk_factor_match(const std::vector<std::vector<std::string>>& documents,
                                   const RiskFactorConfig& config);

} // namespace socio
