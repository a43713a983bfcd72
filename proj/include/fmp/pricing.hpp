#pragma once

#include <utility>

namespace fmp {

// Inputs to the call/put formulas. sigma follows this library's
// convention: the trailing sum of monthly close-price standard
// deviations, in raw price units.
struct PricingInputs {
    double spot = 0.0;    // S
    double strike = 0.0;  // K
    double rate = 0.0;    // r, annual decimal
    double yield = 0.0;   // q, annual decimal
    double sigma = 0.0;   // raw price units
    double time = 0.0;    // T, fraction of a trading year
};

struct OptionQuote {
    double call = 0.0;
    double put = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double predicted_close = 0.0;  // (call + put) / 2
};

// Phi(x). Absolute error below 1e-10 on [-8, 8]; saturates to 0/1 only by
// erfc underflow, never by branching. Throws on non-finite input.
double std_normal_cdf(double x);

// d1 = [ln(S/K) + (r - q + sigma^2/2) T] / (sigma sqrt(T)),
// d2 = [ln(S/K) + (r - q - sigma^2/2) T] / (sigma sqrt(T)).
// Throws naming the violated invariant (S, K, T, sigma must be positive).
std::pair<double, double> d_terms(const PricingInputs& inputs);

// call = S e^{-qT} N(d1) - K e^{-rT} N(d2)
// put  = K e^{-rT} N(-d2) - S e^{-qT} N(-d1)
OptionQuote price_options(const PricingInputs& inputs);

}  // namespace fmp
