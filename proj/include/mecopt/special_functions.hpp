#pragma once

namespace mecopt {

// Principal branch of the Lambert W function: the unique w >= -1 with
// w * exp(w) = x, defined for x >= -1/e.
//
// Arguments up to 1e-15 below -1/e are treated as rounding noise and clamp
// to the branch point value -1; anything further below throws
// std::domain_error. Accuracy target: |w*e^w - x| <= 1e-12 * max(1, |x|).
double lambert_w0(double x);

// Minimum received-SNR-normalized transmit power that sustains rate
// bits_per_s on a channel of bandwidth_hz with noise power noise_power_w:
//   noise_power_w * (2^(bits_per_s / bandwidth_hz) - 1).
// The caller divides by the channel power gain to get actual power.
// Throws std::invalid_argument unless bits_per_s >= 0, bandwidth_hz > 0 and
// noise_power_w > 0. Overflows cleanly to +infinity for extreme rates.
double rate_power(double bits_per_s, double bandwidth_hz, double noise_power_w);

}  // namespace mecopt
