#include "nlp/diagnostics/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "nlp/diagnostics/norms.hpp"
#include "nlp/simd/kernels.hpp"

namespace nlp::diagnostics {
namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

NormReport compute_report(double time, const spectral::SpectralField& u_hat, const NormSpec& spec) {
    NormReport rep;
    rep.time = time;
    const auto& k = simd::active();
    rep.overflow = !k.all_finite(u_hat.data());
    rep.max_coeff = rep.overflow ? std::numeric_limits<double>::infinity() : k.max_abs(u_hat.data());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (rep.overflow) {
        for (int j = 0; j < u_hat.species(); ++j)
            rep.species.push_back({nan, std::vector<double>(spec.thetas.size(), nan),
                                   std::vector<double>(spec.pm_indices.size(), nan), nan, {nan, nan}});
        return rep;
    }
    const auto phys = spectral::inverse_transform(u_hat);
    for (int j = 0; j < u_hat.species(); ++j) {
        SpeciesNorms s;
        s.sup = k.max_abs(phys.component(j));
        for (double theta : spec.thetas) s.weighted.push_back(weighted_sup_norm(phys, theta, j));
        for (double a : spec.pm_indices) s.pm.push_back(pm_norm(u_hat, a, j));
        s.besov = spec.besov_enabled ? besov_norm(u_hat, spec.besov, j).norm : nan;
        s.mass = u_hat.at(j, 0);
        rep.species.push_back(std::move(s));
    }
    return rep;
}

std::string csv_header(const NormSpec& spec, int species) {
    std::string h = "time";
    for (int j = 0; j < species; ++j) {
        const std::string sfx = "_" + std::to_string(j);
        h += ",sup" + sfx;
        for (double t : spec.thetas) h += ",linf_theta" + label(t) + sfx;
        for (double a : spec.pm_indices) h += ",pm_a" + label(a) + sfx;
        h += ",besov_a" + label(spec.besov.a) + sfx;
        h += ",mass_re" + sfx + ",mass_im" + sfx;
    }
    return h + ",max_coeff,overflow";
}

std::string csv_row(const NormReport& r) {
    std::string row = num(r.time);
    for (const auto& s : r.species) {
        row += "," + num(s.sup);
        for (double v : s.weighted) row += "," + num(v);
        for (double v : s.pm) row += "," + num(v);
        row += "," + num(s.besov);
        row += "," + num(s.mass.real()) + "," + num(s.mass.imag());
    }
    return row + "," + num(r.max_coeff) + "," + (r.overflow ? "1" : "0");
}

}  // namespace nlp::diagnostics
