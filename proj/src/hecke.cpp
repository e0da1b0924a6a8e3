#include "ltwist/hecke.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ltwist {

namespace {

// (a, b) exponents in Delta * E4^a * E6^b for each supported weight.
struct WeightRecipe {
    int e4;
    int e6;
};

WeightRecipe recipe_for(int weight) {
    switch (weight) {
        case 12: return {0, 0};
        case 16: return {1, 0};
        case 18: return {0, 1};
        case 20: return {2, 0};
        case 22: return {1, 1};
        case 26: return {2, 1};
        default:
            throw std::invalid_argument(
                "unsupported weight " + std::to_string(weight) +
                "; supported weights are {12, 16, 18, 20, 22, 26} (one-dimensional spaces)");
    }
}

// sigma_1 sieve, int64 is plenty here.
std::vector<std::int64_t> sigma1_table(std::size_t n) {
    std::vector<std::int64_t> s(n + 1, 0);
    for (std::size_t d = 1; d <= n; ++d)
        for (std::size_t m = d; m <= n; m += d) s[m] += static_cast<std::int64_t>(d);
    return s;
}

std::vector<mpz_class> sigma_power_table(std::size_t n, unsigned power) {
    std::vector<mpz_class> s(n + 1, 0);
    for (std::size_t d = 1; d <= n; ++d) {
        mpz_class dp;
        mpz_ui_pow_ui(dp.get_mpz_t(), d, power);
        for (std::size_t m = d; m <= n; m += d) s[m] += dp;
    }
    return s;
}

// F = prod_{n>=1} (1-q^n)^24 via m f_m = -24 sum_{j<=m} sigma_1(j) f_{m-j}.
std::vector<mpz_class> eta24(std::size_t len) {
    auto sigma = sigma1_table(len);
    std::vector<mpz_class> f(len + 1);
    f[0] = 1;
    mpz_class acc;
    for (std::size_t m = 1; m <= len; ++m) {
        acc = 0;
        for (std::size_t j = 1; j <= m; ++j)
            acc += sigma[j] * f[m - j];
        acc *= -24;
        mpz_divexact_ui(f[m].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(m));
    }
    return f;
}

std::vector<mpz_class> eisenstein(std::size_t len, unsigned sigma_power, long factor) {
    auto sig = sigma_power_table(len, sigma_power);
    std::vector<mpz_class> e(len + 1);
    e[0] = 1;
    for (std::size_t n = 1; n <= len; ++n) e[n] = factor * sig[n];
    return e;
}

std::vector<mpz_class> compute_coefficients(int weight, std::int64_t n) {
    auto rec = recipe_for(weight);
    std::size_t len = static_cast<std::size_t>(n) - 1;  // degree in q after the leading q
    std::vector<mpz_class> series = eta24(len);
    if (rec.e4 > 0) {
        auto e4 = eisenstein(len, 3, 240);
        for (int i = 0; i < rec.e4; ++i) series = multiply_series(series, e4, len + 1);
    }
    if (rec.e6 > 0) {
        auto e6 = eisenstein(len, 5, -504);
        for (int i = 0; i < rec.e6; ++i) series = multiply_series(series, e6, len + 1);
    }
    // Delta * products = q * series, so a(m) = series[m-1].
    std::vector<mpz_class> coeffs(static_cast<std::size_t>(n));
    for (std::size_t m = 0; m < coeffs.size(); ++m) coeffs[m] = series[m];
    return coeffs;
}

}  // namespace

std::vector<mpz_class> multiply_series(const std::vector<mpz_class>& a,
                                       const std::vector<mpz_class>& b,
                                       std::size_t len) {
    std::vector<mpz_class> c(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0) continue;
        const mpz_srcptr ai = a[i].get_mpz_t();
        std::size_t jmax = std::min(b.size(), len - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(c[i + j].get_mpz_t(), ai, b[j].get_mpz_t());
        }
    }
    return c;
}

bool weight_supported(int weight) {
    switch (weight) {
        case 12: case 16: case 18: case 20: case 22: case 26: return true;
        default: return false;
    }
}

struct HeckeEigenform::Cache {
    mutable std::shared_mutex mutex;
    std::vector<mpz_class> coeffs;  // coeffs[i] = a(i+1)
};

HeckeEigenform::HeckeEigenform(int weight, std::int64_t n_coeffs)
    : weight_(weight), cache_(std::make_shared<Cache>()) {
    recipe_for(weight);  // validates
    if (n_coeffs < 1) throw std::invalid_argument("HeckeEigenform: need at least one coefficient");
    extend(n_coeffs);
}

void HeckeEigenform::extend(std::int64_t n) const {
    {
        std::shared_lock lock(cache_->mutex);
        if (static_cast<std::int64_t>(cache_->coeffs.size()) >= n) return;
    }
    std::unique_lock lock(cache_->mutex);
    if (static_cast<std::int64_t>(cache_->coeffs.size()) >= n) return;

    std::vector<mpz_class> fresh;
    if (!load_coefficient_cache(weight_, n, fresh)) {
        fresh = compute_coefficients(weight_, n);
        store_coefficient_cache(weight_, n, fresh);
    }
    // Extending must never change previously returned values.
    for (std::size_t i = 0; i < cache_->coeffs.size(); ++i) {
        if (fresh[i] != cache_->coeffs[i])
            throw std::logic_error("coefficient cache extension changed an existing value");
    }
    cache_->coeffs = std::move(fresh);
}

mpz_class HeckeEigenform::a(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("a_f(n): n must be positive");
    extend(n);
    std::shared_lock lock(cache_->mutex);
    return cache_->coeffs[static_cast<std::size_t>(n - 1)];
}

Real HeckeEigenform::lambda(std::int64_t n, unsigned digits) const {
    if (n < 1) throw std::invalid_argument("lambda_f(n): n must be positive");
    mpz_class an = a(n);
    PrecisionGuard guard(digits + kGuardDigits);
    Real num;
    mpfr_set_z(num.backend().data(), an.get_mpz_t(), MPFR_RNDN);
    Real base = n;
    Real expo = Real(weight_ - 1) / 2;
    return num / boost::multiprecision::pow(base, expo);
}

std::int64_t HeckeEigenform::cache_len() const {
    std::shared_lock lock(cache_->mutex);
    return static_cast<std::int64_t>(cache_->coeffs.size());
}

std::vector<mpz_class> HeckeEigenform::coefficients(std::int64_t n) const {
    extend(n);
    std::shared_lock lock(cache_->mutex);
    return {cache_->coeffs.begin(), cache_->coeffs.begin() + n};
}

std::string coefficient_cache_dir() {
    const char* dir = std::getenv("LTWIST_CACHE_DIR");
    return dir ? std::string(dir) : std::string();
}

namespace {
std::string cache_path(int weight, std::int64_t n) {
    std::ostringstream os;
    os << coefficient_cache_dir() << "/coeffs_w" << weight << "_n" << n << ".json";
    return os.str();
}
}  // namespace

bool load_coefficient_cache(int weight, std::int64_t n, std::vector<mpz_class>& out) {
    if (coefficient_cache_dir().empty()) return false;
    std::ifstream in(cache_path(weight, n));
    if (!in) return false;
    try {
        nlohmann::json j;
        in >> j;
        if (j.at("weight").get<int>() != weight || j.at("n").get<std::int64_t>() != n) return false;
        const auto& arr = j.at("coeffs");
        if (static_cast<std::int64_t>(arr.size()) != n) return false;
        out.clear();
        out.reserve(arr.size());
        for (const auto& s : arr) out.emplace_back(s.get<std::string>());
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

void store_coefficient_cache(int weight, std::int64_t n, const std::vector<mpz_class>& coeffs) {
    if (coefficient_cache_dir().empty()) return;
    nlohmann::json j;
    j["weight"] = weight;
    j["n"] = n;
    auto arr = nlohmann::json::array();
    for (const auto& c : coeffs) arr.push_back(c.get_str());
    j["coeffs"] = std::move(arr);
    std::error_code ec;
    std::filesystem::create_directories(coefficient_cache_dir(), ec);
    std::string path = cache_path(weight, n);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump();
    }
    std::filesystem::rename(tmp, path, ec);
}

}  // namespace ltwist
