#include "svlab/cli/manifest.hpp"

#include "svlab/error.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <iterator>
#include <memory>

namespace svlab::cli {

namespace {

std::string to_hex(const unsigned char* data, unsigned len) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0xf]);
    }
    return out;
}

} // namespace

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
        throw Error(ErrorCode::IoError, "SHA-256 digest failed");
    }
    return to_hex(digest.data(), len);
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256_hex(bytes);
}

nlohmann::json to_json(const ModelParams& params) {
    return {{"kind", std::string(to_string(params.kind))},
            {"alpha", params.alpha},
            {"m", params.m},
            {"k", params.k},
            {"rho", params.rho},
            {"mu", params.mu},
            {"y0", params.y0},
            {"s0", params.s0}};
}

void write_manifest(const std::filesystem::path& dir, const Manifest& manifest,
                    const std::vector<std::filesystem::path>& outputs) {
    nlohmann::json j;
    j["tool"] = "svlab";
    j["version"] = SVLAB_VERSION;
    j["command"] = manifest.command;
    j["seed"] = manifest.seed;
    if (!manifest.config_text.empty()) j["config"] = manifest.config_text;
    if (!manifest.input_name.empty()) {
        j["input"] = {{"name", manifest.input_name}, {"sha256", manifest.input_digest}};
    }
    j["details"] = manifest.details;
    j["notes"] = manifest.notes;
    j["warnings"] = manifest.warnings;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& rel : outputs) {
        files.push_back({{"file", rel.generic_string()}, {"sha256", sha256_file(dir / rel)}});
    }
    j["outputs"] = files;
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + (dir / "manifest.json").string());
    out << j.dump(2) << '\n';
}

} // namespace svlab::cli
