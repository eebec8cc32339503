#include "nlp/app/output.hpp"

#include <fstream>
#include <stdexcept>

#include "nlp/spectral/snapshot.hpp"

namespace nlp::app {
namespace {

template <class Fill>
void atomic(const std::filesystem::path& path, Fill&& fill) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        fill(os);
        os.flush();
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
    atomic(path, [&](std::ostream& os) { os << content; });
}

void write_json_atomic(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

void write_snapshot_atomic(const std::filesystem::path& path, const spectral::SpectralField& field, double time) {
    atomic(path, [&](std::ostream& os) { spectral::write_snapshot(os, field, time); });
}

}  // namespace nlp::app
