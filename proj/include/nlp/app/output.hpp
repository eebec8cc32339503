#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "nlp/spectral/field.hpp"

namespace nlp::app {

// Each writer fills "<path>.tmp" and renames it over path, so readers never
// see a half-written file. Throws std::runtime_error on I/O failure.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);
void write_json_atomic(const std::filesystem::path& path, const nlohmann::ordered_json& j);
void write_snapshot_atomic(const std::filesystem::path& path, const spectral::SpectralField& field, double time);

}  // namespace nlp::app
