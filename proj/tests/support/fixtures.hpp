#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// Test-side access to the bundled assets (compile definition set by CMake).
namespace delta::testsupport {

inline std::filesystem::path assets_root() {
    if (const char* env = std::getenv("DELTA_ASSETS_DIR"); env && *env)
        return env;
#ifdef DELTA_TEST_ASSETS_DIR
    return DELTA_TEST_ASSETS_DIR;
#else
    return "assets";
#endif
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

inline std::string read_asset(const std::string& relative) {
    return read_file(assets_root() / relative);
}

}  // namespace delta::testsupport
