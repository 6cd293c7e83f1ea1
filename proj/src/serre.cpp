#include "sz/serre.hpp"

#include <map>
#include <shared_mutex>
#include <tuple>

namespace sz {

namespace {

std::shared_mutex exact_mtx;
std::map<std::pair<int, std::int64_t>, ExactSeries> exact_cache;

std::shared_mutex float_mtx;
std::map<std::tuple<int, std::int64_t, unsigned>, FloatSeries> float_cache;

} // namespace

ExactSeries e2p_series_cached(int level, std::int64_t trunc) {
    auto key = std::make_pair(level, trunc);
    {
        std::shared_lock lock(exact_mtx);
        auto it = exact_cache.find(key);
        if (it != exact_cache.end()) return it->second;
    }
    ExactSeries s = e2p(level, trunc).series;
    std::unique_lock lock(exact_mtx);
    return exact_cache.emplace(key, std::move(s)).first->second;
}

FloatSeries e2p_series_cached(int level, std::int64_t trunc, unsigned precision_bits) {
    auto key = std::make_tuple(level, trunc, precision_bits);
    {
        std::shared_lock lock(float_mtx);
        auto it = float_cache.find(key);
        if (it != float_cache.end()) return it->second;
    }
    FloatSeries s = to_float(e2p(level, trunc).series, precision_bits);
    std::unique_lock lock(float_mtx);
    return float_cache.emplace(key, std::move(s)).first->second;
}

std::int64_t ord_infinity(const ExactForm& f) {
    if (f.series.is_zero())
        throw std::domain_error("ord_infinity of an identically zero series");
    return f.series.valuation();
}

std::int64_t ord_infinity(const FloatForm& f) {
    PrecisionGuard guard(f.series.domain().precision_bits);
    BigFloat threshold = pow2(32 - static_cast<long>(f.series.domain().precision_bits));
    const auto& c = f.series.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (abs(c[i]) > threshold) return f.series.valuation() + static_cast<std::int64_t>(i);
    throw std::domain_error("ord_infinity: series is zero to the working threshold");
}

} // namespace sz
