#include "fmp/pricing.hpp"

#include <cmath>
#include <stdexcept>

namespace fmp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void validate(const PricingInputs& in) {
    if (!(in.spot > 0.0)) throw std::invalid_argument("pricing inputs: spot must be positive");
    if (!(in.strike > 0.0)) throw std::invalid_argument("pricing inputs: strike must be positive");
    if (!(in.time > 0.0)) throw std::invalid_argument("pricing inputs: time must be positive");
    if (!(in.sigma > 0.0)) throw std::invalid_argument("pricing inputs: sigma must be positive");
}

}  // namespace

double std_normal_cdf(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("std_normal_cdf: non-finite argument");
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

std::pair<double, double> d_terms(const PricingInputs& in) {
    validate(in);
    const double denom = in.sigma * std::sqrt(in.time);
    const double base = std::log(in.spot / in.strike) + (in.rate - in.yield) * in.time;
    const double half_var = 0.5 * in.sigma * in.sigma * in.time;
    return {(base + half_var) / denom, (base - half_var) / denom};
}

OptionQuote price_options(const PricingInputs& in) {
    const auto [d1, d2] = d_terms(in);
    const double spot_disc = in.spot * std::exp(-in.yield * in.time);
    const double strike_disc = in.strike * std::exp(-in.rate * in.time);

    OptionQuote quote;
    quote.d1 = d1;
    quote.d2 = d2;
    quote.call = spot_disc * std_normal_cdf(d1) - strike_disc * std_normal_cdf(d2);
    quote.put = strike_disc * std_normal_cdf(-d2) - spot_disc * std_normal_cdf(-d1);
    quote.predicted_close = (quote.call + quote.put) / 2.0;
    return quote;
}

}  // namespace fmp
