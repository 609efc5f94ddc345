#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kljn::detail {
namespace {

enum class Kind { forward, inverse };

class PlanCache {
public:
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

    fftw_plan get(Kind kind, int n)
    {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(kind, n);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;

        std::vector<double> real(static_cast<std::size_t>(n));
        std::vector<std::complex<double>> spec(static_cast<std::size_t>(n / 2 + 1));
        auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan = kind == Kind::forward ? fftw_plan_dft_r2c_1d(n, real.data(), cplx, flags)
                                               : fftw_plan_dft_c2r_1d(n, cplx, real.data(), flags);
        if (!plan)
            throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<Kind, int>, fftw_plan> plans_;
};

PlanCache& cache()
{
    static PlanCache instance;
    return instance;
}

void check_sizes(std::size_t n_real, std::size_t n_complex)
{
    if (n_real == 0 || n_complex != n_real / 2 + 1)
        throw std::invalid_argument("fft size mismatch");
}

} // namespace

void inverse_real_fft(std::span<std::complex<double>> in, std::span<double> out)
{
    check_sizes(out.size(), in.size());
    fftw_plan plan = cache().get(Kind::inverse, static_cast<int>(out.size()));
    fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(in.data()), out.data());
}

void forward_real_fft(std::span<double> in, std::span<std::complex<double>> out)
{
    check_sizes(in.size(), out.size());
    fftw_plan plan = cache().get(Kind::forward, static_cast<int>(in.size()));
    fftw_execute_dft_r2c(plan, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace kljn::detail
