#include "stuforge/stu_norm.hpp"

#include "stuforge/lcs.hpp"
#include "stuforge/majorize.hpp"

#include <cmath>
#include <string>

namespace stuforge::stu_norm {

namespace {

lcs::LcsDecomposition dec_at(const spectra::EnergySpectrum& spec, double beta) {
    const Vec p = spectra::thermal_vector(spec, {beta}).probs;
    return lcs::decompose(lcs::JointDiagonal::product(p));
}

Vec normalized(const Vec& v) {
    const double n = v.sum();
    if (n <= 0.0) throw std::domain_error("zero-norm subspace vector");
    return v / n;
}

// (1 + Pi^i) b_i / (2 ||b_i||)
Vec folded_target(const Vec& bi, int i, int d) {
    const Mat shift = Mat::Identity(d, d) + cyclic_permutation(d, i);
    return shift * bi / (2.0 * bi.sum());
}

}  // namespace

NormReport decomposition_norms(const spectra::EnergySpectrum& spec,
                               spectra::InverseTemperature beta,
                               spectra::InverseTemperature beta_prime) {
    if (beta.is_infinite() || beta_prime.is_infinite())
        throw std::invalid_argument("norm report needs finite beta (zero-norm subspaces)");
    if (beta_prime.beta > beta.beta)
        throw std::invalid_argument("requires beta' <= beta");
    const int d = spec.dim();
    const auto dec = dec_at(spec, beta.beta);
    const auto dec_p = dec_at(spec, beta_prime.beta);

    NormReport rep;
    rep.d = d;
    rep.norm_q = dec.norm_q();
    rep.norm_a = dec_p.norm_q();

    const double h = 1e-5 * std::max(1.0, beta.beta);
    const auto dec_hi = dec_at(spec, beta.beta + h);
    const auto dec_lo = dec_at(spec, std::max(0.0, beta.beta - h));
    const double denom = beta.beta + h - std::max(0.0, beta.beta - h);
    rep.d_norm_q_d_beta = (dec_hi.norm_q() - dec_lo.norm_q()) / denom;

    for (int i = 1; i <= dec.k(); ++i) {
        SubspaceNorms s;
        s.norm_r = dec.norm_r(i);
        s.norm_b = dec_p.norm_r(i);
        s.r_majorizes_b = majorize::majorizes(normalized(dec.r_i(i)), normalized(dec_p.r_i(i)));
        s.q_majorizes_folded_b =
            majorize::majorizes(normalized(dec.q), folded_target(dec_p.r_i(i), i, d));
        s.d_norm_r_d_beta = (dec_hi.norm_r(i) - dec_lo.norm_r(i)) / denom;
        rep.subspaces.push_back(s);
    }
    double acct = rep.norm_q;
    for (int i = 1; i <= dec.k(); ++i) acct += 2.0 * dec.prefactor(i) * dec.norm_r(i);
    rep.norm_accounting_ok = std::abs(acct - 1.0) < 1e-10;
    return rep;
}

Conditions check_conditions(const spectra::EnergySpectrum& spec,
                            spectra::InverseTemperature beta,
                            spectra::InverseTemperature beta_prime) {
    const auto rep = decomposition_norms(spec, beta, beta_prime);
    const int d = rep.d;
    Conditions c;
    c.cond_i = rep.norm_q >= rep.norm_a - 1e-12;
    if (!c.cond_i) c.witness = "||q|| < ||a||";
    for (std::size_t i = 0; i < rep.subspaces.size(); ++i) {
        if (!rep.subspaces[i].r_majorizes_b) {
            c.cond_i = false;
            if (c.witness.empty())
                c.witness = "r^_" + std::to_string(i + 1) + " does not majorise b^_" +
                            std::to_string(i + 1);
        }
    }
    c.cond_ii_strong = true;
    for (std::size_t i = 0; i < rep.subspaces.size(); ++i) {
        const auto& s = rep.subspaces[i];
        if (s.norm_r > s.norm_b + 1e-12) {
            c.cond_ii_strong = false;
            if (c.witness.empty())
                c.witness = "||r_" + std::to_string(i + 1) + "|| > ||b_" +
                            std::to_string(i + 1) + "||";
        }
        if (!s.q_majorizes_folded_b) {
            c.cond_ii_strong = false;
            if (c.witness.empty())
                c.witness = "q^ does not majorise (1+Pi^" + std::to_string(i + 1) +
                            ")b/(2||b||)";
        }
    }
    // weak condition: a + f~ nonnegative and majorised by q, with
    // f~ = sum c_i (1 - ||r_i||/||b_i||)(1 + Pi^i) b_i
    {
        const auto dec = dec_at(spec, beta.beta);
        const auto dec_p = dec_at(spec, beta_prime.beta);
        Vec lhs = dec_p.q;
        for (int i = 1; i <= dec.k(); ++i) {
            const Mat shift = Mat::Identity(d, d) + cyclic_permutation(d, i);
            const double coef =
                dec.prefactor(i) * (1.0 - dec.norm_r(i) / dec_p.norm_r(i));
            lhs += coef * (shift * dec_p.r_i(i));
        }
        c.cond_ii_weak = lhs.minCoeff() >= -1e-12;
        if (c.cond_ii_weak) {
            try {
                c.cond_ii_weak = majorize::majorizes(dec.q, lhs);
            } catch (const SumMismatch&) {
                c.cond_ii_weak = false;
            }
        }
    }
    return c;
}

AlphaSplit alpha_split(const spectra::EnergySpectrum& spec,
                       spectra::InverseTemperature beta,
                       spectra::InverseTemperature beta_prime) {
    const auto rep = decomposition_norms(spec, beta, beta_prime);
    const auto dec = dec_at(spec, beta.beta);
    AlphaSplit a;
    a.alpha0 = rep.norm_a / rep.norm_q;
    for (int i = 1; i <= dec.k(); ++i) {
        const auto& s = rep.subspaces[i - 1];
        a.alpha.push_back(2.0 * dec.prefactor(i) * (s.norm_b - s.norm_r) / rep.norm_q);
    }
    return a;
}

double AlphaSplit::sum() const {
    double s = alpha0;
    for (double v : alpha) s += v;
    return s;
}

block_unitary::BlockUnitary build_stu_norm(const spectra::EnergySpectrum& spec,
                                           spectra::InverseTemperature beta,
                                           spectra::InverseTemperature beta_prime) {
    if (beta.is_infinite())
        throw ConditionsNotMet("beta = +inf has zero-norm subspaces; refuse to build");
    const auto cond = check_conditions(spec, beta, beta_prime);
    if (!(cond.cond_i && cond.cond_ii_strong))
        throw ConditionsNotMet("passing-on-the-norm conditions fail: " + cond.witness);

    const int d = spec.dim();
    const auto dec = dec_at(spec, beta.beta);
    const auto dec_p = dec_at(spec, beta_prime.beta);
    const auto split = alpha_split(spec, beta, beta_prime);

    const Vec q_hat = normalized(dec.q);
    Mat mq = split.alpha0 * majorize::hlp_construct(q_hat, normalized(dec_p.q)).matrix;
    for (int i = 1; i <= dec.k(); ++i) {
        const Mat part =
            majorize::hlp_construct(q_hat, folded_target(dec_p.r_i(i), i, d)).matrix;
        mq += split.alpha[i - 1] * part;
    }

    std::vector<Mat> upper;
    const Mat uq = majorize::horn_lift(dec.q, mq * dec.q);
    for (int i = 1; i <= dec.k(); ++i) {
        const Mat mri =
            majorize::hlp_construct(normalized(dec.r_i(i)), normalized(dec_p.r_i(i))).matrix;
        Vec target = mri * dec.r_i(i);
        if (dec.is_midpoint(i)) {
            // the midpoint block acts alone; symmetrize its target so both
            // marginals receive the same contribution
            const Mat shift = Mat::Identity(d, d) + cyclic_permutation(d, i);
            target = 0.5 * (shift * target);
        }
        upper.push_back(majorize::horn_lift(dec.r_i(i), target));
    }
    return block_unitary::BlockUnitary::symmetric(d, uq, upper);
}

}  // namespace stuforge::stu_norm
