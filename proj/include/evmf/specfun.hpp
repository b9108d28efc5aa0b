#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evmf/precision.hpp"
#include "evmf/scaled.hpp"

namespace evmf {

// Arguments of Lauricella's function of the fourth kind F_D^(N).
// All x_i must lie strictly left of 1 (convergence of the Laplace-type
// integral representation); b and x must have equal length.
struct FdArguments {
    double a = 1.0;          // outer parameter, > 0
    std::vector<double> b;   // inner parameters beta_1..beta_N
    double c = 1.0;          // denominator parameter, > 0
    std::vector<double> x;   // arguments, each < 1

    void validate() const;
};

// Arguments of the confluent Lauricella function Phi_2^(N).
struct Phi2Arguments {
    std::vector<double> b;
    double c = 1.0;
    std::vector<double> x;

    void validate() const;
};

// ---- scalar special functions --------------------------------------------

// Gamma(z) for z > 0.
double gamma_fn(double z);

// log|Gamma(x)| and the sign of Gamma(x); x may be negative (non-integer).
struct SignedLogGamma {
    double log_abs;
    double sign;
};
SignedLogGamma lgamma_signed(double x);

// Digamma psi(x).
double digamma(double x);

// Rising factorial (y)_l = y (y+1) ... (y+l-1); (y)_0 = 1.
double pochhammer(double y, std::int64_t l);

// (1+x)^p evaluated as exp(p*log1p(x)), stable for |x| << 1 with huge p.
double pow1p(double x, double p);

// Kummer confluent hypergeometric 1F1(a; b; z).  Negative z goes through the
// Kummer transform e^z 1F1(b-a; b; -z); large positive z through the
// asymptotic expansion.
double kummer_1f1(double a, double b, double z,
                  const PrecisionPolicy& policy = default_policy());
ScaledReal kummer_1f1_scaled(double a, double b, double z,
                             const PrecisionPolicy& policy = default_policy());

// Confluent limit 0F1(; b; z) = lim_{a->inf} 1F1(a; b; z/a); carries the
// Bessel-type factor of the kappa-mu density.
ScaledReal hyp0f1_scaled(double b, double z,
                         const PrecisionPolicy& policy = default_policy());

// Gauss hypergeometric 2F1(a, b; c; x) for x < 1.  Series for |x| <= 0.5,
// linear transformations of the argument for 0.5 < x < 1 and x < -0.5.
double gauss_2f1(double a, double b, double c, double x,
                 const PrecisionPolicy& policy = default_policy());

// Independent evaluation path: 2F1 as the Laplace-type integral
// int_0^inf e^-t t^(a-1) 1F1(b; c; x t) dt / Gamma(a), requiring a > 0
// (falls back to the b-slot by symmetry if a <= 0 < b).
double gauss_2f1_integral(double a, double b, double c, double x,
                          const PrecisionPolicy& policy = default_policy());

// Tricomi confluent hypergeometric U(a, b, z) for a > 0, z > 0, by adaptive
// quadrature of its defining integral.
double tricomi_u(double a, double b, double z,
                 const PrecisionPolicy& policy = default_policy());

// ---- multivariate hypergeometric functions -------------------------------

// Confluent Lauricella Phi_2^(N)(b; c; x), evaluated by a total-degree
// regrouping of the multivariate series.  The exponential shift transform is
// applied automatically when any argument is strongly negative.
ScaledReal phi2_n(const Phi2Arguments& args,
                  const PrecisionPolicy& policy = default_policy());

// Lauricella F_D^(N).  Primary path: semi-infinite quadrature with Phi_2 as
// kernel.  Secondary path (all |x_i| < 0.5): multivariate power series,
// cross-checked against the primary within 10 * rel_tol.
double lauricella_fd(const FdArguments& args,
                     const PrecisionPolicy& policy = default_policy());

// The two paths individually (the series path requires max|x_i| < 1 and is
// practical for max|x_i| <= ~0.7).
double lauricella_fd_integral(const FdArguments& args,
                              const PrecisionPolicy& policy = default_policy());
double lauricella_fd_series(const FdArguments& args,
                            const PrecisionPolicy& policy = default_policy());

} // namespace evmf
