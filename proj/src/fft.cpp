#include "hgineq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace hgineq {

namespace {

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        // Planning needs scratch arrays; FFTW_ESTIMATE does not touch them.
        std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
        auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(std::vector<std::complex<double>>& data, int sign) {
    if (data.empty()) return;
    fftw_plan plan = cache().get(static_cast<int>(data.size()), sign);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& data) { run(data, FFTW_FORWARD); }

void fft_inverse(std::vector<std::complex<double>>& data) {
    run(data, FFTW_BACKWARD);
    double s = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= s;
}

}  // namespace hgineq
