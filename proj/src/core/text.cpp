#include "core/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace socio {

namespace {

bool word_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c >= 0x80;
}

char lower(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    bool sigil_only = false; // cur holds just "@" or "#"

    auto flush = [&] {
        if (!cur.empty() && !sigil_only) tokens.push_back(cur);
        cur.clear();
        sigil_only = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (word_char(c)) {
            cur += lower(c);
            sigil_only = false;
        } else if (c == '@' || c == '#') {
            flush();
            cur += static_cast<char>(c);
            sigil_only = true;
        } else if (c == '\'' && !cur.empty() && !sigil_only &&
                   word_char(static_cast<unsigned char>(cur.back())) && i + 1 < text.size() &&
                   word_char(static_cast<unsigned char>(text[i + 1]))) {
            cur += '\'';
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

TokenCorpus build_corpus(const std::vector<std::string>& texts) {
    TokenCorpus corpus;
    corpus.documents.reserve(texts.size());
    for (const auto& text : texts) {
        auto tokens = tokenize(text);
        for (const auto& t : tokens) ++corpus.vocabulary[t];
        corpus.total_tokens += tokens.size();
        corpus.documents.push_back(std::move(tokens));
    }
    return corpus;
}

std::map<std::string, TermStat> term_stats(const TokenCorpus& corpus) {
    if (corpus.total_tokens == 0)
        throw undefined_metric_error("term statistics undefined: corpus has no tokens");
    std::map<std::string, TermStat> stats;
    const double total = static_cast<double>(corpus.total_tokens);
    for (const auto& [token, count] : corpus.vocabulary)
        stats.emplace(token, TermStat{count, static_cast<double>(count) / total});
    return stats;
}

namespace {

std::set<std::string> load_word_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("lexicon file missing or unreadable: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        std::string word = line.substr(start);
        for (char& c : word) c = lower(static_cast<unsigned char>(c));
        words.insert(std::move(word));
    }
    if (words.empty()) throw config_error("lexicon file is empty: " + path);
    return words;
}

} // namespace

LexiconSet load_lexicons(const std::string& dir) {
    LexiconSet set;
    const std::string base = dir.empty() || dir.back() == '/' ? dir : dir + "/";
    set.positive = load_word_list(base + "positive.txt");
    set.negative = load_word_list(base + "negative.txt");
    set.anger_mild = load_word_list(base + "anger_mild.txt");
    set.anger_typical = load_word_list(base + "anger_typical.txt");
    set.anger_violent = load_word_list(base + "anger_violent.txt");
    set.calm = load_word_list(base + "calm.txt");
    return set;
}

RatioValue sentiment_ratio(double numerator, double denominator) {
    if (denominator <= 0.0) return {std::nullopt, "zero_denominator"};
    if (numerator <= 0.0) return {std::nullopt, "zero_numerator"};
    return {std::log10(numerator / denominator), ""};
}

SentimentReport sentiment_scores(const TokenCorpus& corpus, const LexiconSet& lexicons) {
    if (corpus.total_tokens == 0)
        throw undefined_metric_error("sentiment undefined: corpus has no tokens");

    std::uint64_t pos = 0, neg = 0, mild = 0, typical = 0, violent = 0, calm = 0;
    for (const auto& [token, count] : corpus.vocabulary) {
        if (lexicons.positive.count(token)) pos += count;
        if (lexicons.negative.count(token)) neg += count;
        if (lexicons.anger_mild.count(token)) mild += count;
        if (lexicons.anger_typical.count(token)) typical += count;
        if (lexicons.anger_violent.count(token)) violent += count;
        if (lexicons.calm.count(token)) calm += count;
    }

    SentimentReport report;
    const double total = static_cast<double>(corpus.total_tokens);
    report.s_pos = static_cast<double>(pos) / total;
    report.s_neg = static_cast<double>(neg) / total;
    report.s_anger_mild = static_cast<double>(mild) / total;
    report.s_anger_typical = static_cast<double>(typical) / total;
    report.s_anger_violent = static_cast<double>(violent) / total;
    report.s_calm = static_cast<double>(calm) / total;
    report.r_sent = sentiment_ratio(report.s_pos, report.s_neg);
    report.r_angr = sentiment_ratio(
        report.s_calm, report.s_anger_mild + report.s_anger_typical + report.s_anger_violent);
    return report;
}

std::vector<BigramStat> bigram_stats(const TokenCorpus& corpus, std::uint64_t min_count) {
    std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
    std::uint64_t total_bigrams = 0;
    for (const auto& doc : corpus.documents) {
        for (std::size_t i = 0; i + 1 < doc.size(); ++i) {
            ++counts[{doc[i], doc[i + 1]}];
            ++total_bigrams;
        }
    }
    if (total_bigrams == 0) return {};

    const double bt = static_cast<double>(total_bigrams);
    const double tt = static_cast<double>(corpus.total_tokens);
    std::vector<BigramStat> stats;
    for (const auto& [pair, count] : counts) {
        if (count < min_count) continue;
        BigramStat s;
        s.w1 = pair.first;
        s.w2 = pair.second;
        s.count = count;
        s.salience = static_cast<double>(count) / bt;
        const double p_joint = static_cast<double>(count) / bt;
        const double p1 = static_cast<double>(corpus.vocabulary.at(pair.first)) / tt;
        const double p2 = static_cast<double>(corpus.vocabulary.at(pair.second)) / tt;
        s.mutual_information = std::log2(p_joint / (p1 * p2));
        stats.push_back(std::move(s));
    }
    std::sort(stats.begin(), stats.end(), [](const BigramStat& a, const BigramStat& b) {
        if (a.count != b.count) return a.count > b.count;
        if (a.w1 != b.w1) return a.w1 < b.w1;
        return a.w2 < b.w2;
    });
    return stats;
}

RiskFactorConfig load_risk_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("risk config: cannot read " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("risk config: " + path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("categories") || !doc["categories"].is_array())
        throw config_error("risk config: expected an object with a \"categories\" array");

    RiskFactorConfig config;
    for (const auto& entry : doc["categories"]) {
        if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string() ||
            !entry.contains("phrases") || !entry["phrases"].is_array())
            throw config_error("risk config: each category needs a name and a phrases array");
        RiskCategory cat;
        cat.name = entry["name"].get<std::string>();
        for (const auto& phrase : entry["phrases"]) {
            if (!phrase.is_string())
                throw config_error("risk config: phrases must be strings (category \"" +
                                   cat.name + "\")");
            auto tokens = tokenize(phrase.get<std::string>());
            if (tokens.empty())
                throw config_error("risk config: phrase tokenizes to nothing (category \"" +
                                   cat.name + "\")");
            cat.phrases.push_back(std::move(tokens));
        }
        if (cat.phrases.empty())
            throw config_error("risk config: category \"" + cat.name + "\" has no phrases");
        config.categories.push_back(std::move(cat));
    }
    if (config.categories.size() != 12)
        throw config_error("risk config: expected exactly 12 categories, found " +
                           std::to_string(config.categories.size()));
    return config;
}

namespace {

bool phrase_at(const std::vector<std::string>& doc, std::size_t pos,
               const std::vector<std::string>& phrase) {
    if (pos + phrase.size() > doc.size()) return false;
    for (std::size_t i = 0; i < phrase.size(); ++i)
        if (doc[pos + i] != phrase[i]) return false;
    return true;
}

} // namespace

RiskFactorReport risk_factor_match(const std::vector<std::vector<std::string>>& documents,
                                   const RiskFactorConfig& config) {
    if (config.categories.size() != 12)
        throw config_error("risk matching requires exactly 12 categories");

    RiskFactorReport report;
    for (const auto& doc : documents) report.total_tokens += doc.size();

    for (const auto& cat : config.categories) {
        RiskCategoryReport row;
        row.name = cat.name;
        std::uint64_t covered = 0;
        for (const auto& doc : documents) {
            std::vector<char> hit(doc.size(), 0);
            bool matched = false;
            for (const auto& phrase : cat.phrases) {
                for (std::size_t pos = 0; pos + phrase.size() <= doc.size(); ++pos) {
                    if (!phrase_at(doc, pos, phrase)) continue;
                    matched = true;
                    for (std::size_t i = 0; i < phrase.size(); ++i) hit[pos + i] = 1;
                }
            }
            if (matched) ++row.matched_tweets;
            for (char h : hit) covered += h;
        }
        row.salience = report.total_tokens == 0
                           ? 0.0
                           : static_cast<double>(covered) / static_cast<double>(report.total_tokens);
        report.categories.push_back(std::move(row));
    }
    return report;
}

} // namespace socio
