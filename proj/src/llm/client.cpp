#include "delta/llm/client.hpp"

#include <cstdlib>
#include <fstream>

#include <openssl/evp.h>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <json.hpp>

namespace delta::llm {

using nlohmann::json;

HttpError::HttpError(int status, const std::string& body)
    : LlmError("completion endpoint returned HTTP " + std::to_string(status) + ": " +
               body.substr(0, 200)),
      status_(status) {}

MissingFixtureError::MissingFixtureError(const std::string& digest)
    : LlmError("no recorded fixture for request digest " + digest), digest_(digest) {}

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw LlmError("SHA-256 digest computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

Backend backend_from_name(const std::string& name) {
    if (name == "live")
        return Backend::Live;
    if (name == "replay")
        return Backend::Replay;
    if (name == "record")
        return Backend::Record;
    throw std::invalid_argument("unknown backend '" + name + "' (live|replay|record)");
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Live: return "live";
        case Backend::Replay: return "replay";
        case Backend::Record: return "record";
    }
    return "?";
}

LlmConfig load_llm_config(const std::string& json_text) {
    LlmConfig cfg;
    json doc = json::parse(json_text);
    if (doc.contains("endpoint_url"))
        cfg.endpoint_url = doc["endpoint_url"].get<std::string>();
    if (doc.contains("model"))
        cfg.model = doc["model"].get<std::string>();
    if (doc.contains("temperature"))
        cfg.temperature = doc["temperature"].get<double>();
    if (doc.contains("top_p"))
        cfg.top_p = doc["top_p"].get<double>();
    if (doc.contains("request_timeout_s"))
        cfg.request_timeout_s = doc["request_timeout_s"].get<double>();
    if (doc.contains("api_key_env"))
        cfg.api_key_env = doc["api_key_env"].get<std::string>();
    return cfg;
}

std::string CompletionRequest::canonical_json() const {
    json body;
    body["model"] = model;
    body["temperature"] = temperature;
    body["top_p"] = top_p;
    body["messages"] = json::array();
    for (const auto& [role, content] : messages)
        body["messages"].push_back({{"role", role}, {"content", content}});
    return body.dump();
}

std::string CompletionRequest::digest() const {
    return sha256_hex(canonical_json());
}

CompletionRequest make_request(const LlmConfig& config, const PromptTemplate& prompt) {
    CompletionRequest req;
    req.model = config.model;
    req.temperature = config.temperature;
    req.top_p = config.top_p;
    req.messages.emplace_back("system", prompt.role_text);
    req.messages.emplace_back("user",
                              prompt.example_text + "\n\n" + prompt.instruction_text + "\n");
    return req;
}

FixtureStore::FixtureStore(std::vector<std::filesystem::path> dirs) : dirs_(std::move(dirs)) {}

std::optional<std::string> FixtureStore::lookup(const std::string& digest) const {
    std::shared_lock lock(mutex_);
    for (const auto& dir : dirs_) {
        std::filesystem::path path = dir / (digest + ".txt");
        std::ifstream in(path, std::ios::binary);
        if (!in)
            continue;
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        return text;
    }
    return std::nullopt;
}

void FixtureStore::record(const std::string& digest, const std::string& completion,
                          const std::string& metadata_json) const {
    if (dirs_.empty())
        throw LlmError("fixture store has no directory to record into");
    std::unique_lock lock(mutex_);
    std::filesystem::create_directories(dirs_.front());
    {
        std::ofstream out(dirs_.front() / (digest + ".txt"), std::ios::binary);
        out << completion;
    }
    {
        std::ofstream out(dirs_.front() / (digest + ".meta.json"), std::ios::binary);
        out << metadata_json;
    }
}

Transport http_transport() {
    return [](const std::string& url, const std::string& api_key, const std::string& body,
              double timeout_s) -> std::string {
        auto scheme_end = url.find("://");
        if (scheme_end == std::string::npos)
            throw NetworkError("endpoint url '" + url + "' has no scheme");
        auto path_start = url.find('/', scheme_end + 3);
        std::string base = path_start == std::string::npos ? url : url.substr(0, path_start);
        std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

        httplib::Client client(base);
        client.set_connection_timeout(std::chrono::milliseconds(
            static_cast<int64_t>(timeout_s * 1000)));
        client.set_read_timeout(std::chrono::milliseconds(
            static_cast<int64_t>(timeout_s * 1000)));
        httplib::Headers headers;
        if (!api_key.empty())
            headers.emplace("Authorization", "Bearer " + api_key);
        auto result = client.Post(path, headers, body, "application/json");
        if (!result)
            throw NetworkError("request to " + url + " failed: " +
                               httplib::to_string(result.error()));
        if (result->status < 200 || result->status >= 300)
            throw HttpError(result->status, result->body);
        return result->body;
    };
}

CompletionClient::CompletionClient(LlmConfig config, Backend backend,
                                   const FixtureStore* fixtures, Transport transport)
    : config_(std::move(config)),
      backend_(backend),
      fixtures_(fixtures),
      transport_(std::move(transport)) {
    if (backend_ != Backend::Live && !fixtures_)
        throw LlmError("replay/record backends require a fixture store");
}

std::string CompletionClient::complete(const CompletionRequest& request) const {
    const std::string digest = request.digest();
    if (backend_ == Backend::Replay) {
        auto hit = fixtures_->lookup(digest);
        if (!hit)
            throw MissingFixtureError(digest);
        return *hit;
    }

    const char* key = std::getenv(config_.api_key_env.c_str());
    Transport transport = transport_ ? transport_ : http_transport();
    std::string response_body = transport(config_.endpoint_url, key ? key : "",
                                          request.canonical_json(),
                                          config_.request_timeout_s);
    std::string text;
    try {
        json doc = json::parse(response_body);
        text = doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw MalformedResponseError(std::string("cannot parse completion response: ") +
                                     e.what());
    }

    if (backend_ == Backend::Record) {
        json meta;
        meta["model"] = request.model;
        meta["prompt"] = request.canonical_json();
        meta["timestamp"] = [] {
            char buf[32];
            std::time_t now = std::time(nullptr);
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
            return std::string(buf);
        }();
        fixtures_->record(digest, text, meta.dump(2) + "\n");
    }
    return text;
}

std::string CompletionClient::complete(const PromptTemplate& prompt) const {
    return complete(make_request(config_, prompt));
}

}  // namespace delta::llm
