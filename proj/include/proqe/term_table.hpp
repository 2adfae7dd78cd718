#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace proqe {

struct ProqeParams {
    double alpha{1.0};  // query boost
    double beta{1.0};   // increment on a relevant verdict
    double gamma{0.0};  // decrement on an irrelevant verdict
    std::size_t n_iterations{5};
    std::size_t m_terms{5};
    std::size_t candidate_budget_k{100};  // over-fetch bound for top-1-new
};

/// Global expansion-term dictionary. A term, once added, stays in the table
/// even at weight <= 0; it is merely not emitted into the query.
class TermWeightTable {
public:
    /// Terms absent from the table are initialized to 0, then each listed term
    /// gets +beta on a relevant verdict and -gamma otherwise.
    void update(const std::vector<std::string>& terms, bool relevant, double beta, double gamma);

    bool contains(const std::string& term) const { return index_.count(term) > 0; }
    double weight(const std::string& term) const;
    /// M: total number of terms ever added.
    std::size_t total_terms() const { return entries_.size(); }
    /// Insertion order.
    const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, double>> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace proqe
