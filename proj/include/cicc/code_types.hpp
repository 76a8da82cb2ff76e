#pragma once

namespace cicc {

/// Message and dummy-randomness set sizes (|K|, |I|, |J|, |S|, |A|).
/// The private payload is split as L = I x J.
struct CodeSizes {
  long long k = 1;
  long long i = 1;
  long long j = 1;
  long long s = 1;
  long long a = 1;
};

/// Log-likelihood-ratio thresholds for the four decoding sets, natural-log
/// scale at the working blocklength (an n-letter test compares the summed
/// per-letter log ratios against these values).
struct Thresholds {
  double alpha0 = 0.0;  // Eve's cloud test (U,X2; Z)
  double alpha1 = 0.0;  // satellite given cloud (V; Y | U,X2)
  double alpha2 = 0.0;  // satellite and cloud center given X2
  double alpha3 = 0.0;  // full tuple against the Y marginal
};

}  // namespace cicc
