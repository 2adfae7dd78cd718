#pragma once

#include <string>
#include <unordered_set>
#include <vector>

namespace proqe {

/// Deterministic text normalization: lowercase -> split on non-alphanumeric ->
/// stopword removal -> optional Porter stemming, in that order.
struct TokenizerConfig {
    bool lowercase{true};
    bool stem{false};
    std::unordered_set<std::string> stopwords;

    TokenizerConfig();

    static TokenizerConfig no_stopwords();
};

/// The built-in 33-word English stopword list.
const std::unordered_set<std::string>& default_stopwords();

/// One word per line; blank lines ignored.
std::unordered_set<std::string> load_stopwords(const std::string& path);

std::vector<std::string> tokenize(const std::string& text, const TokenizerConfig& config);

/// Porter's 1980 suffix-stripping algorithm. Expects a lowercase word.
std::string porter_stem(const std::string& word);

}  // namespace proqe
