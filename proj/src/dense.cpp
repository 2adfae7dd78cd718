#include "proqe/dense.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace proqe {

bool Embedding::is_zero() const {
    for (double v : values) {
        if (v != 0.0) return false;
    }
    return true;
}

double dot(const Embedding& a, const Embedding& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("embedding dimension mismatch: " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
    return s;
}

double l2_norm(const Embedding& e) {
    double s = 0.0;
    for (double v : e.values) s += v * v;
    return std::sqrt(s);
}

double cosine(const Embedding& a, const Embedding& b) {
    double na = l2_norm(a);
    double nb = l2_norm(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot(a, b) / (na * nb);
}

namespace {

// FNV-1a, 64 bit; fixed so encodings are identical across platforms.
std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

HashedBowEncoder::HashedBowEncoder(std::size_t dim, TokenizerConfig config)
    : dim_(dim), config_(std::move(config)) {
    if (dim_ == 0) throw std::invalid_argument("encoder dimension must be positive");
}

Embedding HashedBowEncoder::encode(const std::string& text) const {
    Embedding e;
    e.values.assign(dim_, 0.0);
    auto tokens = tokenize(text, config_);
    if (tokens.empty()) {
        std::cerr << "warning: encoding empty text, returning zero vector\n";
        return e;
    }
    for (const auto& tok : tokens) {
        std::uint64_t h = fnv1a(tok);
        std::size_t bucket = h % dim_;
        double sign = (h >> 63) ? -1.0 : 1.0;
        e.values[bucket] += sign;
    }
    double norm = l2_norm(e);
    if (norm > 0.0) {
        for (double& v : e.values) v /= norm;
    }
    return e;
}

Embedding combine_intermediate(const Embedding& query_embedding, const TermWeightTable& table,
                               const TextEncoder& encoder, const DenseParams& params) {
    if (query_embedding.dim() != encoder.dim()) {
        throw std::invalid_argument("query embedding dimension " +
                                    std::to_string(query_embedding.dim()) +
                                    " does not match encoder dimension " +
                                    std::to_string(encoder.dim()));
    }
    Embedding out;
    out.values.assign(query_embedding.dim(), 0.0);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = params.sigma * query_embedding.values[i];
    }
    std::size_t total = table.total_terms();
    if (total == 0) return out;

    double scale = params.tau / static_cast<double>(total);
    for (const auto& [term, weight] : table.entries()) {
        if (params.positive_only && weight <= 0.0) continue;
        if (weight == 0.0) continue;
        Embedding term_vec = encoder.encode(term);
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            out.values[i] += scale * weight * term_vec.values[i];
        }
    }
    return out;
}

Embedding combine_final(const Embedding& intermediate, const Embedding& cot_embedding,
                        const DenseParams& params) {
    if (intermediate.dim() != cot_embedding.dim()) {
        throw std::invalid_argument("embedding dimension mismatch: " +
                                    std::to_string(intermediate.dim()) + " vs " +
                                    std::to_string(cot_embedding.dim()));
    }
    Embedding out;
    out.values.assign(intermediate.dim(), 0.0);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = params.sigma * intermediate.values[i] + params.delta * cot_embedding.values[i];
    }
    return out;
}

Similarity similarity_from_string(const std::string& name) {
    if (name == "dot") return Similarity::kDot;
    if (name == "cosine") return Similarity::kCosine;
    throw std::invalid_argument("unknown similarity '" + name + "' (expected dot|cosine)");
}

std::string to_string(Similarity s) { return s == Similarity::kDot ? "dot" : "cosine"; }

VectorIndex VectorIndex::build(const Corpus& corpus, const TextEncoder& encoder,
                               Similarity similarity) {
    if (corpus.empty()) throw std::runtime_error("cannot build vector index over empty corpus");
    VectorIndex idx(encoder.dim(), similarity);
    for (const auto& d : corpus.docs()) idx.add(d.id, encoder.encode(d.text));
    return idx;
}

void VectorIndex::add(const std::string& doc_id, Embedding vec) {
    if (vec.dim() != dim_) {
        throw std::invalid_argument("vector for " + doc_id + " has dimension " +
                                    std::to_string(vec.dim()) + ", index expects " +
                                    std::to_string(dim_));
    }
    for (double v : vec.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in vector for " + doc_id);
    }
    auto [it, inserted] = vectors_.emplace(doc_id, std::move(vec));
    if (!inserted) throw std::runtime_error("duplicate doc_id " + doc_id);
    order_.insert(std::upper_bound(order_.begin(), order_.end(), doc_id), doc_id);
}

const Embedding& VectorIndex::vector_of(const std::string& doc_id) const {
    auto it = vectors_.find(doc_id);
    if (it == vectors_.end()) throw std::out_of_range("unknown doc_id " + doc_id);
    return it->second;
}

double VectorIndex::score(const Embedding& query, const std::string& doc_id) const {
    const Embedding& v = vector_of(doc_id);
    return similarity_ == Similarity::kDot ? dot(query, v) : cosine(query, v);
}

std::vector<ScoredDoc> VectorIndex::search(const Embedding& query, std::size_t k,
                                           const DocIdSet& exclude) const {
    if (query.dim() != dim_) {
        throw std::invalid_argument("query dimension " + std::to_string(query.dim()) +
                                    " does not match index dimension " + std::to_string(dim_));
    }
    std::vector<ScoredDoc> hits;
    hits.reserve(order_.size());
    for (const auto& id : order_) {
        if (exclude.count(id)) continue;
        hits.push_back({id, score(query, id)});
    }
    std::sort(hits.begin(), hits.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

void VectorIndex::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write vector file: " + path);
    out << "d=" << dim_ << "\n";
    char buf[64];
    for (const auto& id : order_) {
        out << id;
        for (double v : vectors_.at(id).values) {
            auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
            if (ec != std::errc{}) throw std::runtime_error("vector serialization failure");
            out << ' ';
            out.write(buf, end - buf);
        }
        out << "\n";
    }
}

VectorIndex VectorIndex::load(const std::string& path, Similarity similarity) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vector file: " + path);
    std::string header;
    if (!std::getline(in, header) || header.rfind("d=", 0) != 0) {
        throw std::runtime_error(path + ":1: expected header line d=<int>");
    }
    std::size_t dim = 0;
    {
        auto [ptr, ec] = std::from_chars(header.data() + 2, header.data() + header.size(), dim);
        if (ec != std::errc{} || ptr != header.data() + header.size() || dim == 0) {
            throw std::runtime_error(path + ":1: invalid dimension in header");
        }
    }
    VectorIndex idx(dim, similarity);
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string id;
        fields >> id;
        Embedding e;
        e.values.reserve(dim);
        std::string tok;
        while (fields >> tok) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": invalid vector component '" + tok + "'");
            }
            e.values.push_back(v);
        }
        if (e.dim() != dim) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(dim) + " components, got " +
                                     std::to_string(e.dim()));
        }
        idx.add(id, std::move(e));
    }
    return idx;
}

}  // namespace proqe
