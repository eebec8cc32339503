#include "nlp/spectral/snapshot.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace nlp::spectral {
namespace {

constexpr const char* kMagic = "NLPF1";
constexpr const char* kLayout = "row-major complex interleaved little-endian float64";

void require_little_endian() {
    if constexpr (std::endian::native != std::endian::little)
        throw std::runtime_error("NLPF1 I/O is only implemented on little-endian hosts");
}

}  // namespace

void write_snapshot(std::ostream& os, const SpectralField& field, double time) {
    require_little_endian();
    const auto& g = field.grid();
    nlohmann::ordered_json header;
    header["d"] = g.dim();
    header["n"] = g.points_per_axis();
    header["period"] = g.period();
    header["m"] = field.species();
    header["time"] = time;
    header["layout"] = kLayout;
    os << kMagic << '\n' << header.dump() << '\n';
    const auto data = field.data();
    os.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size_bytes()));
    if (!os) throw std::runtime_error("failed to write NLPF1 snapshot");
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_snapshot(os, field, time);
}

Snapshot read_snapshot(std::istream& is) {
    require_little_endian();
    std::string line;
    if (!std::getline(is, line) || line != kMagic) throw std::runtime_error("not an NLPF1 stream");
    if (!std::getline(is, line)) throw std::runtime_error("NLPF1 header missing");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("NLPF1 header is not JSON: ") + e.what());
    }
    if (header.value("layout", std::string()) != kLayout) throw std::runtime_error("unsupported NLPF1 layout");
    TorusGrid grid(header.at("d").get<int>(), header.at("n").get<int>(), header.at("period").get<double>());
    Snapshot snap{header.at("time").get<double>(), SpectralField(grid, header.at("m").get<int>())};
    auto data = snap.field.data();
    is.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size_bytes()));
    if (is.gcount() != static_cast<std::streamsize>(data.size_bytes()))
        throw std::runtime_error("NLPF1 payload truncated");
    return snap;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    return read_snapshot(is);
}

}  // namespace nlp::spectral
