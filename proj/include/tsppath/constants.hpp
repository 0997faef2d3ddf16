#pragma once

namespace tsppath::constants {

// Structure-theorem parameters.
inline constexpr double kEps1 = 1.875e-12;
inline constexpr double kEps2 = 5e-2;
inline constexpr double kGamma = 1e-7;
inline constexpr double kDelta = 6.25e-16;
inline constexpr double kRho = 1.5e-24;
inline constexpr double kEps2Prime = 6e-2;

// Max-entropy marginal slack: marginals at most (1 + nu / n^k) x.
inline constexpr double kNu = 0.2;
inline constexpr int kExponent = 2;

// Dispatch window for the critical case and the resulting guarantees.
inline constexpr double kSigmaL = 7.8e-52;
inline constexpr double kSigmaU = 3.9e-52;
inline constexpr double kCA1 = 4e-2;
inline constexpr double kCA2 = 3.9e-52;
inline constexpr double kEpsilon = 3.9e-52;

// rho and delta above are far below Monte Carlo resolution; experiments use
// these instead and record both.
inline constexpr double kRhoEff = 0.05;
inline constexpr double kDeltaEff = 0.1;

}  // namespace tsppath::constants
