#include "proqe/llm_http.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace proqe {

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

// FNV-1a hex digest over template + inputs; good enough for a local cache key.
std::string cache_key(const std::string& tmpl, const std::string& rendered) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0x1f;
        h *= 1099511628211ull;
    };
    mix(tmpl);
    mix(rendered);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct ParsedEndpoint {
    std::string scheme_host;
    std::string path;
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
    auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw std::invalid_argument("endpoint must include a scheme: " + endpoint);
    }
    auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {endpoint, "/v1/chat/completions"};
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

class SlotGuard {
public:
    SlotGuard(std::mutex& m, std::condition_variable& cv, int& in_flight, int limit)
        : m_(m), cv_(cv), in_flight_(in_flight) {
        std::unique_lock lock(m_);
        cv_.wait(lock, [&] { return in_flight_ < limit; });
        ++in_flight_;
    }
    ~SlotGuard() {
        {
            std::lock_guard lock(m_);
            --in_flight_;
        }
        cv_.notify_one();
    }

private:
    std::mutex& m_;
    std::condition_variable& cv_;
    int& in_flight_;
};

}  // namespace

HttpLlmConfig HttpLlmConfig::from_env() {
    HttpLlmConfig c;
    c.endpoint = env_or("PROQE_LLM_ENDPOINT", "");
    c.api_key = env_or("PROQE_LLM_API_KEY", "");
    c.model = env_or("PROQE_LLM_MODEL", c.model);
    return c;
}

HttpLlmClient::HttpLlmClient(HttpLlmConfig config) : config_(std::move(config)) {
    if (config_.endpoint.empty()) {
        throw std::invalid_argument("HTTP LLM client requires an endpoint (PROQE_LLM_ENDPOINT)");
    }
    auto parsed = parse_endpoint(config_.endpoint);
    scheme_host_ = parsed.scheme_host;
    path_ = parsed.path;

    if (!config_.cache_path.empty()) {
        std::ifstream in(config_.cache_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.contains("key") || !j.contains("response")) continue;
            cache_[j["key"].get<std::string>()] = j["response"].get<std::string>();
        }
    }
}

std::optional<std::string> HttpLlmClient::cache_get(const std::string& key) const {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it == cache_.end()) return std::nullopt;
    return it->second;
}

void HttpLlmClient::cache_put(const std::string& key, const std::string& response) const {
    std::lock_guard lock(cache_mutex_);
    if (!cache_.emplace(key, response).second) return;
    if (config_.cache_path.empty()) return;
    std::ofstream out(config_.cache_path, std::ios::app);
    out << nlohmann::json{{"key", key}, {"response", response}}.dump() << "\n";
}

void HttpLlmClient::log_exchange(const std::string& prompt, const std::string& response) const {
    if (config_.log_path.empty()) return;
    std::lock_guard lock(log_mutex_);
    std::ofstream out(config_.log_path, std::ios::app);
    auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::system_clock::now().time_since_epoch())
                   .count();
    out << nlohmann::json{{"ts_ms", now},
                          {"model", config_.model},
                          {"request", prompt},
                          {"response", response}}
               .dump()
        << "\n";
}

std::string HttpLlmClient::post_chat(const std::string& prompt) const {
    nlohmann::json body{
        {"model", config_.model},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
        {"temperature", 0},
    };
    const std::string payload = body.dump();

    std::string last_error;
    int backoff_ms = config_.backoff_initial_ms;
    for (int attempt = 0; attempt < config_.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
        SlotGuard slot(slots_mutex_, slots_cv_, in_flight_, config_.max_in_flight);
        httplib::Client client(scheme_host_);
        client.set_connection_timeout(config_.timeout_seconds, 0);
        client.set_read_timeout(config_.timeout_seconds, 0);
        httplib::Headers headers;
        if (!config_.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        }
        auto res = client.Post(path_, headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) {
            last_error = "server error: HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw LlmTransportError("LLM endpoint returned HTTP " + std::to_string(res->status) +
                                    ": " + res->body);
        }
        nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded() || !j.contains("choices") || j["choices"].empty()) {
            throw LlmTransportError("malformed completion response: " + res->body);
        }
        const auto& choice = j["choices"][0];
        if (choice.contains("message") && choice["message"].contains("content")) {
            return choice["message"]["content"].get<std::string>();
        }
        if (choice.contains("text")) {
            return choice["text"].get<std::string>();
        }
        throw LlmTransportError("completion response has no content: " + res->body);
    }
    throw LlmTransportError("LLM call failed after " + std::to_string(config_.max_retries) +
                            " attempts: " + last_error);
}

std::string HttpLlmClient::complete(const std::string& prompt) const {
    std::string key = cache_key("raw", prompt);
    if (auto hit = cache_get(key)) return *hit;
    std::string response = post_chat(prompt);
    log_exchange(prompt, response);
    cache_put(key, response);
    return response;
}

RelVerdict HttpLlmClient::judge_relevance(const QueryContext& query,
                                          const PassageContext& passage) const {
    if (query.text.empty() || passage.text.empty()) {
        throw std::invalid_argument("judge_relevance requires non-empty query and passage");
    }
    std::string prompt = render_template(config_.prompts.judge_relevance,
                                         {{"query", query.text}, {"passage", passage.text}});
    std::string key = cache_key(config_.prompts.judge_relevance, prompt);
    if (auto hit = cache_get(key)) return RelVerdict::from_raw(*hit);
    std::string response = post_chat(prompt);
    log_exchange(prompt, response);
    cache_put(key, response);
    return RelVerdict::from_raw(response);
}

TermList HttpLlmClient::extract_terms(const QueryContext& query, const PassageContext& passage,
                                      std::size_t m) const {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    std::string prompt = render_template(
        config_.prompts.extract_terms,
        {{"query", query.text}, {"passage", passage.text}, {"m", std::to_string(m)}});
    std::string key = cache_key(config_.prompts.extract_terms, prompt);
    if (auto hit = cache_get(key)) return TermList::parse_response(*hit, m);
    std::string response = post_chat(prompt);
    log_exchange(prompt, response);
    cache_put(key, response);
    return TermList::parse_response(response, m);
}

CotText HttpLlmClient::generate_cot(const QueryContext& query) const {
    if (query.text.empty()) throw std::invalid_argument("generate_cot requires a non-empty query");
    std::string prompt = render_template(config_.prompts.generate_cot, {{"query", query.text}});
    std::string key = cache_key(config_.prompts.generate_cot, prompt);
    if (auto hit = cache_get(key)) return {*hit};
    std::string response = post_chat(prompt);
    log_exchange(prompt, response);
    cache_put(key, response);
    return {response};
}

std::string HttpLlmClient::generate_passage(const QueryContext& query) const {
    if (query.text.empty()) throw std::invalid_argument("generate_passage requires a non-empty query");
    std::string prompt = render_template(config_.prompts.query2doc, {{"query", query.text}});
    std::string key = cache_key(config_.prompts.query2doc, prompt);
    if (auto hit = cache_get(key)) return *hit;
    std::string response = post_chat(prompt);
    log_exchange(prompt, response);
    cache_put(key, response);
    return response;
}

}  // namespace proqe
