#include "proqe/term_table.hpp"

namespace proqe {

void TermWeightTable::update(const std::vector<std::string>& terms, bool relevant, double beta,
                             double gamma) {
    for (const auto& term : terms) {
        auto it = index_.find(term);
        if (it == index_.end()) {
            it = index_.emplace(term, entries_.size()).first;
            entries_.emplace_back(term, 0.0);
        }
        double& w = entries_[it->second].second;
        w += relevant ? beta : -gamma;
    }
}

double TermWeightTable::weight(const std::string& term) const {
    auto it = index_.find(term);
    return it == index_.end() ? 0.0 : entries_[it->second].second;
}

}  // namespace proqe
