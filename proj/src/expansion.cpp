#include "proqe/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace proqe {

void proqe_update_weights(TermWeightTable& table, const TermList& terms, const RelVerdict& verdict,
                          const ProqeParams& params) {
    table.update(terms.terms, verdict.relevant, params.beta, params.gamma);
}

namespace {

void append_with_space(std::string& text, const std::string& piece) {
    if (piece.empty()) return;
    if (!text.empty()) text += ' ';
    text += piece;
}

}  // namespace

ExpandedQuery formulate_sparse_query(const QueryRecord& query, const TermWeightTable& table,
                                     double alpha) {
    ExpandedQuery out;
    auto alpha_copies = static_cast<std::size_t>(std::floor(std::max(alpha, 0.0)));
    for (std::size_t i = 0; i < alpha_copies; ++i) append_with_space(out.text_form, query.text);
    for (const auto& [term, weight] : table.entries()) {
        if (weight <= 0.0) continue;
        auto reps = static_cast<std::size_t>(std::floor(weight));
        out.provenance.emplace_back(term, reps);
        for (std::size_t i = 0; i < reps; ++i) append_with_space(out.text_form, term);
    }
    return out;
}

std::string reconstruct_text_form(
    const std::string& query_text, double alpha,
    const std::vector<std::pair<std::string, std::size_t>>& provenance) {
    std::string text;
    auto alpha_copies = static_cast<std::size_t>(std::floor(std::max(alpha, 0.0)));
    for (std::size_t i = 0; i < alpha_copies; ++i) append_with_space(text, query_text);
    for (const auto& [term, reps] : provenance) {
        for (std::size_t i = 0; i < reps; ++i) append_with_space(text, term);
    }
    return text;
}

WeightedQuery rm3_expand(const QueryRecord& query, const InvertedIndex& index, Rm3Params params) {
    WeightedQuery original = WeightedQuery::from_text(query.text, index.tokenizer_config());
    if (original.term_weights.empty()) return original;

    auto feedback = index.search(original, params.fb_docs);
    if (feedback.empty()) return original;

    // Softmax-normalized document weights over the feedback set.
    double max_score = feedback.front().score;
    std::vector<double> doc_weight(feedback.size());
    double z = 0.0;
    for (std::size_t i = 0; i < feedback.size(); ++i) {
        doc_weight[i] = std::exp(feedback[i].score - max_score);
        z += doc_weight[i];
    }
    for (double& w : doc_weight) w /= z;

    // P(t|R) ~ sum_d P(t|d) * score'(d) with P(t|d) = tf/len.
    std::map<std::string, double> rel_model;
    for (std::size_t i = 0; i < feedback.size(); ++i) {
        double len = static_cast<double>(index.doc_length(feedback[i].doc_id));
        for (const auto& [term, tf] : index.doc_terms(feedback[i].doc_id)) {
            rel_model[term] += (static_cast<double>(tf) / len) * doc_weight[i];
        }
    }

    std::vector<std::pair<double, std::string>> ranked;
    ranked.reserve(rel_model.size());
    for (const auto& [term, p] : rel_model) ranked.emplace_back(p, term);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    if (ranked.size() > params.fb_terms) ranked.resize(params.fb_terms);

    double kept_mass = 0.0;
    for (const auto& [p, _] : ranked) kept_mass += p;

    double query_mass = 0.0;
    for (const auto& [_, w] : original.term_weights) query_mass += w;

    WeightedQuery expanded;
    expanded.original_text = original.original_text;
    for (const auto& [term, w] : original.term_weights) {
        expanded.term_weights[term] += params.query_weight * (w / query_mass);
    }
    if (kept_mass > 0.0) {
        for (const auto& [p, term] : ranked) {
            expanded.term_weights[term] += (1.0 - params.query_weight) * (p / kept_mass);
        }
    }
    std::erase_if(expanded.term_weights, [](const auto& kv) { return kv.second <= 0.0; });
    if (expanded.term_weights.empty()) return original;
    return expanded;
}

WeightedQuery rocchio_expand(const QueryRecord& query, const InvertedIndex& index,
                             RocchioParams params) {
    WeightedQuery original = WeightedQuery::from_text(query.text, index.tokenizer_config());
    if (original.term_weights.empty()) return original;

    auto feedback = index.search(original, params.fb_docs);
    if (feedback.empty()) return original;

    // Centroid of feedback tf-idf vectors. There is no non-relevant feedback
    // set under PRF, so the c-term vanishes.
    std::map<std::string, double> centroid;
    for (const auto& hit : feedback) {
        for (const auto& [term, tf] : index.doc_terms(hit.doc_id)) {
            centroid[term] += static_cast<double>(tf) * index.idf(term);
        }
    }
    for (auto& [_, w] : centroid) w /= static_cast<double>(feedback.size());

    // Expansion candidates ranked by their combined weight.
    std::vector<std::pair<double, std::string>> candidates;
    for (const auto& [term, w] : centroid) {
        if (original.term_weights.count(term)) continue;
        candidates.emplace_back(params.b * w, term);
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    if (candidates.size() > params.fb_terms) candidates.resize(params.fb_terms);

    WeightedQuery expanded;
    expanded.original_text = original.original_text;
    for (const auto& [term, w] : original.term_weights) {
        double combined = params.a * w;
        auto it = centroid.find(term);
        if (it != centroid.end()) combined += params.b * it->second;
        if (combined > 0.0) expanded.term_weights[term] = combined;
    }
    for (const auto& [w, term] : candidates) {
        if (w > 0.0) expanded.term_weights[term] = w;
    }
    if (expanded.term_weights.empty()) return original;
    return expanded;
}

namespace {

ExpandedQuery concat_expansion(const QueryRecord& query, const std::string& generated,
                               double alpha) {
    TermWeightTable empty;
    ExpandedQuery out = formulate_sparse_query(query, empty, alpha);
    append_with_space(out.text_form, generated);
    return out;
}

}  // namespace

ExpandedQuery cot_expand(const QueryRecord& query, const LlmClient& llm, double alpha) {
    CotText cot = llm.generate_cot({query.id, query.text});
    return concat_expansion(query, cot.text, alpha);
}

ExpandedQuery query2doc_expand(const QueryRecord& query, const LlmClient& llm, double alpha) {
    std::string passage = llm.generate_passage({query.id, query.text});
    return concat_expansion(query, passage, alpha);
}

}  // namespace proqe
