#include "proqe/prompts.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace proqe {

namespace {

constexpr const char* kJudgeTemplate =
    "Is the following passage related to the query?\n"
    "Query: {query}\n"
    "Passage: {passage}\n";

constexpr const char* kExtractTemplate =
    "Given the query and passage, extract {m} keywords that may be useful to better retrieve "
    "relevant passages.\n"
    "Query: {query}\n"
    "Passage: {passage}\n";

constexpr const char* kCotTemplate =
    "Answer the following query, give rationale before answering.\n"
    "Query: {query}\n";

constexpr const char* kQuery2DocTemplate =
    "Write a passage that answers the given query.\n"
    "Query: {query}\n";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open prompt file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

PromptSet PromptSet::builtin() {
    return {kJudgeTemplate, kExtractTemplate, kCotTemplate, kQuery2DocTemplate};
}

PromptSet PromptSet::load_dir(const std::string& dir) {
    PromptSet p;
    p.judge_relevance = read_file(dir + "/judge_relevance.txt");
    p.extract_terms = read_file(dir + "/extract_terms.txt");
    p.generate_cot = read_file(dir + "/generate_cot.txt");
    p.query2doc = read_file(dir + "/query2doc.txt");
    return p;
}

std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] == '{') {
            std::size_t close = tmpl.find('}', i);
            if (close != std::string::npos) {
                auto it = values.find(tmpl.substr(i + 1, close - i - 1));
                if (it != values.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out += tmpl[i++];
    }
    return out;
}

}  // namespace proqe
