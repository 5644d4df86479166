#pragma once

#include "svlab/cli/config.hpp"
#include "svlab/model.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace svlab::cli {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

nlohmann::json to_json(const ModelParams& params);

// Manifest of one command run: tool version, command, seed, canonical config
// text, input digest and the digest of every output file. Contains no clock
// or machine dependent values, so reruns give byte-identical manifests.
struct Manifest {
    std::string command;
    std::uint64_t seed = 0;
    std::string config_text;          // canonical RunConfig text, empty for fit
    std::string input_name;           // input file name, empty when none
    std::string input_digest;         // SHA-256 of the input bytes
    nlohmann::json details = nlohmann::json::object();
    std::vector<std::string> notes;
    std::vector<std::string> warnings;
};

// Writes <dir>/manifest.json listing `outputs` (paths relative to dir) with
// their digests.
void write_manifest(const std::filesystem::path& dir, const Manifest& manifest,
                    const std::vector<std::filesystem::path>& outputs);

} // namespace svlab::cli
