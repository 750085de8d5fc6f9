#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "allee/equilibria.hpp"
#include "allee/model.hpp"

namespace allee {

enum class Kind {
    StableNode,
    UnstableNode,
    StableFocus,
    UnstableFocus,
    Saddle,
    SaddleNode,
    WeakCenter,
    CuspCodim2,
    Degenerate,
};

// Short stable codes: SN UN SF UF SA SNODE WC CUSP DEG.
std::string_view kind_code(Kind k);
Kind parse_kind_code(std::string_view code);

struct EigenData {
    double trace = 0, det = 0, discriminant = 0;
    // Real pair ordered lambda1 >= lambda2; complex pair has Im(lambda1) > 0.
    std::complex<double> lambda1, lambda2;
};

EigenData eigen_data(const Mat2& J);

struct Evidence {
    std::optional<double> c20;
    std::optional<double> g20, g11;
};

struct Classification {
    Kind kind = Kind::Degenerate;
    EigenData eigen;
    Evidence evidence;
    bool borderline = false;  // node/focus boundary within the band
    std::string reason;       // set for Degenerate
};

// 1e-9 * max(1, ||J||_F).
double zero_band(const Mat2& J);

Classification classify(const ModelParams& p, const Equilibrium& e);
Classification classify_jet(const Jet3& jet);

// Quadratic self-coefficient of the center direction after moving to the
// eigenbasis (zero-eigenvalue vector scaled to a unit leading component).
double centre_manifold_coefficient(const ModelParams& p, const Equilibrium& e);
double centre_manifold_coefficient(const Jet3& jet);

struct CuspCoefficients {
    double g20 = 0, g11 = 0;
};

CuspCoefficients cusp_coefficients(const ModelParams& p, const Equilibrium& e);
CuspCoefficients cusp_coefficients(const Jet3& jet);

}  // namespace allee
