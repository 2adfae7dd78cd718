#include "proqe/tokenizer.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace proqe {

namespace {

const std::unordered_set<std::string> kDefaultStopwords = {
    "a",    "an",   "and",  "are",   "as",    "at",    "be",    "but",  "by",
    "for",  "if",   "in",   "into",  "is",    "it",    "no",    "not",  "of",
    "on",   "or",   "such", "that",  "the",   "their", "then",  "there",
    "these", "they", "this", "to",   "was",   "will",  "with"};

bool is_word_char(unsigned char c) {
    // Bytes >= 0x80 are kept so multi-byte UTF-8 sequences stay intact.
    return std::isalnum(c) || c >= 0x80;
}

char ascii_lower(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

}  // namespace

TokenizerConfig::TokenizerConfig() : stopwords(kDefaultStopwords) {}

TokenizerConfig TokenizerConfig::no_stopwords() {
    TokenizerConfig c;
    c.stopwords.clear();
    return c;
}

const std::unordered_set<std::string>& default_stopwords() { return kDefaultStopwords; }

std::unordered_set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stopword file: " + path);
    std::unordered_set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        if (!line.empty()) out.insert(line);
    }
    return out;
}

std::vector<std::string> tokenize(const std::string& text, const TokenizerConfig& config) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        if (!config.stopwords.count(current)) {
            tokens.push_back(config.stem ? porter_stem(current) : current);
        }
        current.clear();
    };
    for (unsigned char c : text) {
        if (is_word_char(c)) {
            current.push_back(config.lowercase ? ascii_lower(c) : static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

// --- Porter stemmer ---------------------------------------------------------
//
// Straight transcription of the 1980 algorithm. Within a step the rule with
// the longest matching suffix is selected; if its condition fails no rule in
// that step fires.

namespace {

class PorterStemmer {
public:
    explicit PorterStemmer(std::string word) : w_(std::move(word)) {}

    std::string run() {
        if (w_.size() <= 2) return w_;
        step1a();
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5a();
        step5b();
        return w_;
    }

private:
    std::string w_;

    bool is_consonant(std::size_t i) const {
        char c = w_[i];
        switch (c) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !is_consonant(i - 1);
            default:
                return true;
        }
    }

    // Measure of w_[0..len): [C](VC)^m[V]
    std::size_t measure(std::size_t len) const {
        std::size_t m = 0;
        std::size_t i = 0;
        while (i < len && is_consonant(i)) ++i;
        while (i < len) {
            while (i < len && !is_consonant(i)) ++i;
            if (i == len) break;
            ++m;
            while (i < len && is_consonant(i)) ++i;
        }
        return m;
    }

    bool has_vowel(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i) {
            if (!is_consonant(i)) return true;
        }
        return false;
    }

    bool ends_double_consonant(std::size_t len) const {
        if (len < 2) return false;
        return w_[len - 1] == w_[len - 2] && is_consonant(len - 1);
    }

    // *o: ends consonant-vowel-consonant where the final consonant is not w, x or y.
    bool ends_cvc(std::size_t len) const {
        if (len < 3) return false;
        if (!is_consonant(len - 3) || is_consonant(len - 2) || !is_consonant(len - 1)) return false;
        char c = w_[len - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends_with(const char* suffix) const {
        std::size_t n = std::char_traits<char>::length(suffix);
        return w_.size() >= n && w_.compare(w_.size() - n, n, suffix) == 0;
    }

    std::size_t stem_len(const char* suffix) const {
        return w_.size() - std::char_traits<char>::length(suffix);
    }

    void replace_suffix(const char* suffix, const char* repl) {
        w_.replace(stem_len(suffix), std::string::npos, repl);
    }

    void step1a() {
        if (ends_with("sses")) replace_suffix("sses", "ss");
        else if (ends_with("ies")) replace_suffix("ies", "i");
        else if (ends_with("ss")) {}
        else if (ends_with("s")) w_.pop_back();
    }

    void step1b() {
        if (ends_with("eed")) {
            if (measure(stem_len("eed")) > 0) replace_suffix("eed", "ee");
            return;
        }
        bool stripped = false;
        if (ends_with("ed") && has_vowel(stem_len("ed"))) {
            w_.resize(stem_len("ed"));
            stripped = true;
        } else if (ends_with("ing") && has_vowel(stem_len("ing"))) {
            w_.resize(stem_len("ing"));
            stripped = true;
        }
        if (!stripped) return;

        if (ends_with("at") || ends_with("bl") || ends_with("iz")) {
            w_.push_back('e');
        } else if (ends_double_consonant(w_.size())) {
            char c = w_.back();
            if (c != 'l' && c != 's' && c != 'z') w_.pop_back();
        } else if (measure(w_.size()) == 1 && ends_cvc(w_.size())) {
            w_.push_back('e');
        }
    }

    void step1c() {
        if (ends_with("y") && has_vowel(stem_len("y"))) w_.back() = 'i';
    }

    struct Rule {
        const char* suffix;
        const char* repl;
    };

    // Longest matching suffix wins; condition checked only for that rule.
    void apply_rules(const Rule* rules, std::size_t count, std::size_t min_measure) {
        const Rule* best = nullptr;
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t n = std::char_traits<char>::length(rules[i].suffix);
            if (n > best_len && ends_with(rules[i].suffix)) {
                best = &rules[i];
                best_len = n;
            }
        }
        if (!best) return;
        if (measure(stem_len(best->suffix)) >= min_measure) {
            replace_suffix(best->suffix, best->repl);
        }
    }

    void step2() {
        static const Rule rules[] = {
            {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
            {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
            {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
            {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
            {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"}};
        apply_rules(rules, sizeof(rules) / sizeof(rules[0]), 1);
    }

    void step3() {
        static const Rule rules[] = {
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
            {"ical", "ic"},  {"ful", ""},   {"ness", ""}};
        apply_rules(rules, sizeof(rules) / sizeof(rules[0]), 1);
    }

    void step4() {
        static const Rule rules[] = {
            {"al", ""},   {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
            {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
            {"ent", ""},  {"ion", ""},  {"ou", ""},   {"ism", ""}, {"ate", ""},
            {"iti", ""},  {"ous", ""},  {"ive", ""},  {"ize", ""}};
        const Rule* best = nullptr;
        std::size_t best_len = 0;
        for (const auto& r : rules) {
            std::size_t n = std::char_traits<char>::length(r.suffix);
            if (n > best_len && ends_with(r.suffix)) {
                best = &r;
                best_len = n;
            }
        }
        if (!best) return;
        std::size_t len = stem_len(best->suffix);
        if (measure(len) <= 1) return;
        if (std::string_view(best->suffix) == "ion" && len > 0 &&
            w_[len - 1] != 's' && w_[len - 1] != 't') {
            return;
        }
        w_.resize(len);
    }

    void step5a() {
        if (!ends_with("e")) return;
        std::size_t len = stem_len("e");
        std::size_t m = measure(len);
        if (m > 1 || (m == 1 && !ends_cvc(len))) w_.resize(len);
    }

    void step5b() {
        if (measure(w_.size()) > 1 && ends_double_consonant(w_.size()) && w_.back() == 'l') {
            w_.pop_back();
        }
    }
};

}  // namespace

std::string porter_stem(const std::string& word) { return PorterStemmer(word).run(); }

}  // namespace proqe
