#include "osample/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace osample::fft {

namespace {

// FFTW planning is not thread-safe; execution through the new-array API is.
// Plans are created once per (size, direction) and kept for the process lifetime.
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        auto* in = fftw_alloc_complex(static_cast<std::size_t>(n));
        auto* out = fftw_alloc_complex(static_cast<std::size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        if (p == nullptr) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& kv : plans_) fftw_destroy_plan(kv.second);
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

cvec run(const cvec& x, int sign) {
    cvec out(x.size());
    if (x.empty()) return out;
    fftw_plan p = cache().get(static_cast<int>(x.size()), sign);
    // fftw_execute_dft does not modify the input for out-of-place complex transforms
    auto* in = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(x.data()));
    fftw_execute_dft(p, in, reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

cvec forward(const cvec& x) { return run(x, FFTW_FORWARD); }

cvec backward(const cvec& x) { return run(x, FFTW_BACKWARD); }

cvec cyclic_convolve(const cvec& a, const cvec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("cyclic_convolve: size mismatch");
    cvec fa = forward(a);
    const cvec fb = forward(b);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
    cvec out = backward(fa);
    const double n = static_cast<double>(a.size());
    for (auto& v : out) v /= n;
    return out;
}

}  // namespace osample::fft
