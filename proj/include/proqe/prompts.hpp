#pragma once

#include <map>
#include <string>

namespace proqe {

/// The three instruction templates plus the query2doc baseline prompt.
/// Placeholders: {query}, {passage}, {m}.
struct PromptSet {
    std::string judge_relevance;
    std::string extract_terms;
    std::string generate_cot;
    std::string query2doc;

    /// Built-in defaults, byte-identical to the shipped prompt files.
    static PromptSet builtin();

    /// Reads judge_relevance.txt, extract_terms.txt, generate_cot.txt and
    /// query2doc.txt from a directory.
    static PromptSet load_dir(const std::string& dir);
};

/// Replaces every {name} occurrence; unknown placeholders are left intact.
std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& values);

}  // namespace proqe
