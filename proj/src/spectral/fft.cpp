#include "nlp/spectral/fft.hpp"

#include <fftw3.h>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace nlp::spectral {
namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

class PlanCache {
public:
    fftw_plan get(const std::vector<int>& extents, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(extents, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second.get();

        std::size_t total = 1;
        for (int e : extents) {
            if (e <= 0) throw std::invalid_argument("transform extents must be positive");
            total *= static_cast<std::size_t>(e);
        }
        // Planning scratch; ESTIMATE never touches it, UNALIGNED lets the plan
        // run on any std::vector storage.
        auto* scratch = fftw_alloc_complex(total);
        fftw_plan plan = fftw_plan_dft(static_cast<int>(extents.size()), extents.data(), scratch, scratch,
                                       sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
        plans_.emplace(key, PlanHandle(plan));
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::vector<int>, int>, PlanHandle> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

void execute(const std::vector<int>& extents, std::span<std::complex<double>> data, int sign) {
    std::size_t total = 1;
    for (int e : extents) total *= static_cast<std::size_t>(e);
    if (data.size() != total) throw std::invalid_argument("transform buffer does not match extents");
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(cache().get(extents, sign), p, p);
}

}  // namespace

void dft_forward(const std::vector<int>& extents, std::span<std::complex<double>> data) {
    execute(extents, data, FFTW_FORWARD);
}

void dft_backward(const std::vector<int>& extents, std::span<std::complex<double>> data) {
    execute(extents, data, FFTW_BACKWARD);
}

}  // namespace nlp::spectral
