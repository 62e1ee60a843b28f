#pragma once

namespace zoomcurse::normal {

double cdf(double x);

// 1 - cdf(x) without cancellation for large x.
double upper_tail(double x);

// Inverse of cdf. Wichura's AS 241 (PPND16), relative error about 1e-16.
double quantile(double p);

}  // namespace zoomcurse::normal
