#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

namespace delta::harness {

class AssetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Resolves the bundled-content directory: explicit argument, then the
// DELTA_ASSETS_DIR environment variable, then the compiled-in default.
std::filesystem::path resolve_assets_root(const std::string& cli_override = "");

class AssetStore {
  public:
    explicit AssetStore(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }
    bool has(const std::string& relative) const;
    std::string read_text(const std::string& relative) const;
    std::filesystem::path path(const std::string& relative) const { return root_ / relative; }

  private:
    std::filesystem::path root_;
};

}  // namespace delta::harness
