#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "fracmkt/market.hpp"
#include "fracmkt/model.hpp"
#include "fracmkt/rng.hpp"

namespace fracmkt {

enum class DistFamily : std::uint8_t { Constant, UniformInt, LogNormal, Pareto };

std::string_view family_name(DistFamily family);
std::optional<DistFamily> parse_family(std::string_view name);

/// A one-dimensional distribution used for endowments.
///
///   Constant    value = a
///   UniformInt  integers in [a, b]
///   LogNormal   exp(N(mu = a, sigma = b))
///   Pareto      scale = a, shape = b  (x = a * U^(-1/b))
///
/// Shares are rounded to whole units (at least 1 for holders); cash is rounded to cents.
struct DistSpec {
    DistFamily family = DistFamily::Constant;
    double a = 0.0;
    double b = 0.0;

    static DistSpec constant(double v) { return {DistFamily::Constant, v, 0.0}; }
    static DistSpec uniform_int(double lo, double hi) { return {DistFamily::UniformInt, lo, hi}; }
    static DistSpec lognormal(double mu, double sigma) { return {DistFamily::LogNormal, mu, sigma}; }
    static DistSpec pareto(double scale, double shape) { return {DistFamily::Pareto, scale, shape}; }

    [[nodiscard]] double sample(Rng& rng) const;
    /// Throws ConfigError naming `field` when parameters are invalid for the family.
    void validate(std::string_view field) const;

    friend bool operator==(const DistSpec&, const DistSpec&) = default;
};

/// Synthetic replacement for the platform's endowment snapshot.
struct EndowmentProfile {
    std::int64_t n_pb = 727;
    std::int64_t n_ps = 413;
    std::int64_t n_bs = 225;
    double ps_holder_frac = 0.5;   // share of pure sellers holding at least one unit
    double bs_holder_frac = 0.7;
    DistSpec share_dist = DistSpec::lognormal(4.0, 1.0);
    DistSpec cash_dist_pb = DistSpec::lognormal(3.0, 1.5);
    DistSpec cash_dist_bs = DistSpec::lognormal(3.0, 1.5);
    Money cash_floor;

    void validate() const;
    friend bool operator==(const EndowmentProfile&, const EndowmentProfile&) = default;
};

/// Pure buyers first, then pure sellers, then buyer-sellers; ids are dense in that order.
Population generate_population(const EndowmentProfile& profile, Rng& rng);

/// Reads the `kind,shares,cash` table. Throws LoadError naming the file and row.
Population load_population(const std::filesystem::path& path);
Population parse_population(std::istream& in, std::string_view source_name);
void write_population(std::ostream& out, std::span<const AgentState> population);
void save_population(const std::filesystem::path& path, std::span<const AgentState> population);

}  // namespace fracmkt
