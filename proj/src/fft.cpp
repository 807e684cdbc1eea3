#include "riesz/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace riesz {

namespace {

// FFTW planning is not thread-safe; execution via fftw_execute_dft on fresh
// buffers is. Plans are created once per (rank, N, sign) with FFTW_ESTIMATE
// on fftw_malloc'd scratch (so any equally-aligned buffer may execute them)
// and kept for the process lifetime.
std::mutex plan_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> plan_cache;

fftw_plan get_plan(int rank, int N, int sign, fftw_complex* in, fftw_complex* out) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(rank, N, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    int dims[4] = {N, N, N, N};
    fftw_plan plan = fftw_plan_dft(rank, dims, in, out, sign, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fft_nd: planner failed");
    plan_cache.emplace(key, plan);
    return plan;
}

}  // namespace

std::vector<std::complex<double>> fft_nd(const std::vector<std::complex<double>>& data,
                                         int rank, int N, int sign) {
    if (rank < 1 || rank > 4) throw std::domain_error("fft_nd: rank must be 1..4");
    if (sign != 1 && sign != -1) throw std::domain_error("fft_nd: sign must be +-1");
    size_t total = 1;
    for (int r = 0; r < rank; ++r) total *= static_cast<size_t>(N);
    if (data.size() != total) throw std::invalid_argument("fft_nd: size mismatch");

    fftw_complex* in = fftw_alloc_complex(total);
    fftw_complex* out = fftw_alloc_complex(total);
    if (!in || !out) {
        fftw_free(in);
        fftw_free(out);
        throw std::bad_alloc();
    }
    std::memcpy(in, data.data(), total * sizeof(fftw_complex));
    fftw_plan plan = get_plan(rank, N, sign == -1 ? FFTW_FORWARD : FFTW_BACKWARD, in, out);
    fftw_execute_dft(plan, in, out);

    std::vector<std::complex<double>> result(total);
    std::memcpy(static_cast<void*>(result.data()), out, total * sizeof(fftw_complex));
    fftw_free(in);
    fftw_free(out);
    return result;
}

}  // namespace riesz
