#pragma once

#include <condition_variable>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "proqe/llm.hpp"
#include "proqe/prompts.hpp"

namespace proqe {

/// Transport failure after all retries; distinct from a "no" verdict.
class LlmTransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HttpLlmConfig {
    std::string endpoint;  // e.g. http://host:port/v1/chat/completions
    std::string api_key;
    std::string model{"flan-t5-xl"};
    int timeout_seconds{60};
    int max_retries{3};
    int backoff_initial_ms{250};  // doubles per retry
    int max_in_flight{4};
    std::string cache_path;  // JSONL response cache; empty disables
    std::string log_path;    // JSONL request/response log; empty disables
    PromptSet prompts{PromptSet::builtin()};

    /// Endpoint from PROQE_LLM_ENDPOINT, key from PROQE_LLM_API_KEY.
    static HttpLlmConfig from_env();
};

/// Chat-completion client: sends the verbatim prompt templates at
/// temperature 0, retries with exponential backoff, and optionally caches
/// responses keyed by (template, inputs) so runs are resumable.
class HttpLlmClient : public LlmClient {
public:
    explicit HttpLlmClient(HttpLlmConfig config);

    RelVerdict judge_relevance(const QueryContext& query, const PassageContext& passage) const override;
    TermList extract_terms(const QueryContext& query, const PassageContext& passage,
                           std::size_t m) const override;
    CotText generate_cot(const QueryContext& query) const override;
    std::string generate_passage(const QueryContext& query) const override;

    /// Raw round-trip for one rendered prompt.
    std::string complete(const std::string& prompt) const;

private:
    HttpLlmConfig config_;
    std::string scheme_host_;  // scheme://host[:port]
    std::string path_;

    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::string, std::string> cache_;

    mutable std::mutex log_mutex_;

    mutable std::mutex slots_mutex_;
    mutable std::condition_variable slots_cv_;
    mutable int in_flight_{0};

    std::string post_chat(const std::string& prompt) const;
    std::optional<std::string> cache_get(const std::string& key) const;
    void cache_put(const std::string& key, const std::string& response) const;
    void log_exchange(const std::string& prompt, const std::string& response) const;
};

}  // namespace proqe
