#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "delta/llm/prompt.hpp"

namespace delta::llm {

class LlmError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NetworkError : public LlmError {
  public:
    using LlmError::LlmError;
};

class HttpError : public LlmError {
  public:
    HttpError(int status, const std::string& body);
    int status() const { return status_; }

  private:
    int status_;
};

class MalformedResponseError : public LlmError {
  public:
    using LlmError::LlmError;
};

class MissingFixtureError : public LlmError {
  public:
    explicit MissingFixtureError(const std::string& digest);
    const std::string& digest() const { return digest_; }

  private:
    std::string digest_;
};

// SHA-256 hex digest; keys the fixture store.
std::string sha256_hex(std::string_view data);

enum class Backend { Live, Replay, Record };
Backend backend_from_name(const std::string& name);
std::string backend_name(Backend b);

struct LlmConfig {
    std::string endpoint_url = "https://api.openai.com/v1/chat/completions";
    std::string model = "gpt-4-turbo";
    double temperature = 0.0;
    double top_p = 1.0;
    double request_timeout_s = 120.0;
    std::string api_key_env = "DELTA_LLM_API_KEY";
};

// Reads the config keys (endpoint_url, model, temperature, top_p,
// request_timeout_s, api_key_env) from a JSON document; missing keys keep
// their defaults.
LlmConfig load_llm_config(const std::string& json_text);

struct CompletionRequest {
    std::string model;
    double temperature = 0.0;
    double top_p = 1.0;
    std::vector<std::pair<std::string, std::string>> messages;  // (role, content)

    // Canonical JSON body; also the digest input, so fixture keys are stable
    // across platforms and include the model and sampling parameters.
    std::string canonical_json() const;
    std::string digest() const;
};

CompletionRequest make_request(const LlmConfig& config, const PromptTemplate& prompt);

// Recorded completions keyed by request digest. Looks through an ordered
// stack of directories (first hit wins) so seeded-fault overlays can shadow
// the base fixtures; records always go to the first directory. Concurrent
// readers are fine; writes take the exclusive lock.
class FixtureStore {
  public:
    explicit FixtureStore(std::vector<std::filesystem::path> dirs);

    std::optional<std::string> lookup(const std::string& digest) const;
    void record(const std::string& digest, const std::string& completion,
                const std::string& metadata_json) const;
    const std::vector<std::filesystem::path>& dirs() const { return dirs_; }

  private:
    std::vector<std::filesystem::path> dirs_;
    mutable std::shared_mutex mutex_;
};

// HTTP POST hook: (url, api_key, body, timeout_s) -> response body. Tests
// inject a transport that fails on any use to prove replay hermeticity.
using Transport =
    std::function<std::string(const std::string&, const std::string&, const std::string&,
                              double)>;

Transport http_transport();

class CompletionClient {
  public:
    CompletionClient(LlmConfig config, Backend backend, const FixtureStore* fixtures,
                     Transport transport = {});

    // replay: fixture lookup only, no transport. record: live call, then
    // persist under the digest. live: plain call.
    std::string complete(const CompletionRequest& request) const;
    std::string complete(const PromptTemplate& prompt) const;

    Backend backend() const { return backend_; }
    const LlmConfig& config() const { return config_; }

  private:
    LlmConfig config_;
    Backend backend_;
    const FixtureStore* fixtures_;
    Transport transport_;
};

}  // namespace delta::llm
