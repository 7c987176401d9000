#include "qs/simplicity.hpp"

#include "qs/error.hpp"

namespace qs {

namespace {

void require_same_dim(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim() || a.dim() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "matrices must be square of the same positive dimension");
  }
}

void require_nonsingular(const IntMatrix& h) {
  if (det(h) == 0) throw Error(ErrorCode::SingularMatrix, "reduction matrix must be nonsingular");
}

bool is_triangular(const IntMatrix& m) { return m.is_upper_triangular() || m.is_lower_triangular(); }

// Triangular theorem applied to (s·I, g) for a scalar s; sign is absorbed by
// composing with the automorphism -I.
bool triangular_fires(const Integer& s, const IntMatrix& g) {
  const Integer n = abs(s);
  if (n == 0 || !is_triangular(g)) return false;
  if (n < 2 && abs(det(g)) == 1) return false;
  return triangular_criterion(n, g);
}

}  // namespace

std::string_view to_string(Tribool t) {
  switch (t) {
    case Tribool::False: return "false";
    case Tribool::True: return "true";
    case Tribool::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(SimplicityStatus s) {
  switch (s) {
    case SimplicityStatus::Simple: return "Simple";
    case SimplicityStatus::NotSimple: return "NotSimple";
    case SimplicityStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

Hypotheses check_hypotheses(const IntMatrix& f, const IntMatrix& g) {
  require_same_dim(f, g);
  Hypotheses h;
  h.det_f = det(f);
  h.det_g = det(g);
  h.f_surjective = h.det_f != 0;
  h.g_surjective = h.det_g != 0;
  h.ker_f_size = h.f_surjective ? Integer(abs(h.det_f)) : Integer(0);
  h.ker_g_size = h.g_surjective ? Integer(abs(h.det_g)) : Integer(0);
  h.f_injective = abs(h.det_f) == 1;
  h.g_injective = abs(h.det_g) == 1;
  h.both_automorphisms = h.f_injective && h.g_injective;
  if (h.f_surjective && h.g_surjective) h.condition_L = condition_L(f, g);
  return h;
}

Tribool condition_L(const IntMatrix& f, const IntMatrix& g) {
  require_same_dim(f, g);
  const Integer df = det(f), dg = det(g);
  if (df == 0 || dg == 0) return Tribool::Unknown;
  if (abs(dg) != 1 || abs(df) != 1) return Tribool::True;
  return Tribool::Unknown;
}

bool is_dilation(const IntMatrix& f) { return poly::roots_outside_unit_disk(poly::charpoly(f)); }

bool triangular_criterion(const Integer& n, const IntMatrix& g) {
  if (!is_triangular(g)) throw Error(ErrorCode::NotTriangular, "G must be upper or lower triangular");
  const Integer dg = det(g);
  if (dg == 0) throw Error(ErrorCode::SingularMatrix, "G must be nonsingular");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be a positive integer");
  if (n < 2 && abs(dg) == 1) {
    throw Error(ErrorCode::InvalidArgument, "condition (L) needs n >= 2 or a non-injective G");
  }
  for (std::size_t j = 0; j < g.dim(); ++j)
    if (abs(g(j, j)) == n) return false;
  return true;
}

std::pair<IntMatrix, IntMatrix> reduce_right(const IntMatrix& f, const IntMatrix& g, const IntMatrix& h) {
  require_same_dim(f, g);
  require_same_dim(f, h);
  require_nonsingular(h);
  return {f * h, g * h};
}

std::pair<IntMatrix, IntMatrix> reduce_left(const IntMatrix& f, const IntMatrix& g, const IntMatrix& h) {
  require_same_dim(f, g);
  require_same_dim(f, h);
  require_nonsingular(h);
  return {h * f, h * g};
}

NormalForm normalize(const IntMatrix& f, const IntMatrix& g) {
  require_same_dim(f, g);
  const Integer df = det(f);
  if (df == 0 || det(g) == 0) throw Error(ErrorCode::SingularMatrix, "normalize requires nonsingular F and G");
  NormalForm out;
  out.n = abs(df);
  const IntMatrix adj = adjugate(f);
  const IntMatrix product = adj * g;
  out.transcript.push_back("left-multiply by adj(F): (F, G) -> (" + df.get_str() + "·I, adj(F)·G)");
  const SmithDecomposition s = snf(product);
  out.transcript.push_back("Smith form adj(F)·G = U·D·V with D = " + s.d.to_string());
  out.transcript.push_back("left-multiply by U^-1 and right-multiply by U: (det F·I, U·D·V) -> (det F·I, D·V·U)");
  out.t = s.d * s.v * s.u;
  if (df < 0) {
    out.t = -out.t;
    out.transcript.push_back("right-multiply by -I: (det F·I, D·V·U) -> (|det F|·I, -D·V·U)");
  }
  return out;
}

SimplicityVerdict decide(const IntMatrix& f, const IntMatrix& g, const DecideOptions& options) {
  SimplicityVerdict v;
  v.hypotheses = check_hypotheses(f, g);
  const Hypotheses& hyp = v.hypotheses;

  auto fire = [&](std::string id, std::string reason, SimplicityStatus concluded) {
    v.rules.push_back({std::move(id), std::move(reason), concluded});
    if (concluded == SimplicityStatus::Unknown) return;
    if (v.status == SimplicityStatus::Unknown) {
      v.status = concluded;
    } else if (v.status != concluded) {
      throw Error(ErrorCode::InternalError, "rules disagree: " + v.rules.back().id + " concluded " +
                                                std::string(to_string(concluded)) + " against " +
                                                std::string(to_string(v.status)));
    }
  };

  // R0: a zero determinant breaks surjectivity of the torus map.
  if (hyp.det_f == 0 || hyp.det_g == 0) {
    fire("R0-out-of-scope", "OutOfTheoremScope: det F = " + hyp.det_f.get_str() + ", det G = " + hyp.det_g.get_str() +
                                "; the map is not surjective",
         SimplicityStatus::Unknown);
    return v;
  }

  if (hyp.both_automorphisms) {
    fire("R1-automorphisms", "both maps are automorphisms of the torus, so the quiver is not minimal",
         SimplicityStatus::NotSimple);
  }

  if (v.status == SimplicityStatus::Unknown) {
    v.normal_form = normalize(f, g);
    const NormalForm& nf = *v.normal_form;
    fire("R2-normalize", "reduced to (" + nf.n.get_str() + "·I, " + nf.t.to_string() + ")", SimplicityStatus::Unknown);

    // R3: dilation paired with an automorphism.
    std::string dilation_reason;
    if (g.is_identity() && is_dilation(f)) {
      dilation_reason = "G = I and F is a dilation";
    } else if (f.is_identity() && is_dilation(g)) {
      dilation_reason = "F = I and G is a dilation";
    } else if (nf.n == 1 && is_dilation(nf.t)) {
      dilation_reason = "normal form (I, T) with T a dilation";
    } else if (nf.n >= 2 && nf.t.is_scalar() && abs(nf.t(0, 0)) == 1) {
      dilation_reason = "normal form (n·I, ±I) with n >= 2";
    }
    if (!dilation_reason.empty()) fire("R3-dilation", dilation_reason, SimplicityStatus::Simple);

    // R4: triangular theorem on the original pair (either orientation) or the normal form.
    std::string triangular_reason;
    if (f.is_scalar() && triangular_fires(f(0, 0), g)) {
      triangular_reason = "F = " + f(0, 0).get_str() + "·I with G triangular and no |G_jj| equal to |F_11|";
    } else if (g.is_scalar() && triangular_fires(g(0, 0), f)) {
      triangular_reason = "G = " + g(0, 0).get_str() + "·I with F triangular and no |F_jj| equal to |G_11|";
    } else if (triangular_fires(nf.n, nf.t)) {
      triangular_reason = "normal form (" + nf.n.get_str() + "·I, T) with T triangular and no |T_jj| = " +
                          nf.n.get_str();
    }
    if (!triangular_reason.empty()) fire("R4-triangular", triangular_reason, SimplicityStatus::Simple);
  }

  // R5: density of the generated group, run as a cross-check once decided.
  if (v.status == SimplicityStatus::Unknown || options.cross_check) {
    v.density = decide_density(f, g, options.density);
    const DensityVerdict& dv = *v.density;
    if (dv.status == DensityStatus::Dense) {
      if (hyp.condition_L != Tribool::True) {
        throw Error(ErrorCode::InternalError, "dense generated group without condition (L)");
      }
      fire("R5-density", "dense (" + std::string(to_string(dv.evidence)) + "): " + dv.reason,
           SimplicityStatus::Simple);
    } else if (dv.status == DensityStatus::NotDense) {
      fire("R5-density", "not dense (" + std::string(to_string(dv.evidence)) + "): witness " +
                             to_string(*dv.witness) + "; " + dv.reason,
           SimplicityStatus::NotSimple);
    }
  }

  if (v.status == SimplicityStatus::Unknown) {
    const std::size_t depth = v.density ? std::max<std::size_t>(v.density->depth_used, 1) : options.density.max_depth;
    v.trace = compute_chain(f, g, depth);
    fire("R6-unknown", "no rule decided within depth " + std::to_string(depth), SimplicityStatus::Unknown);
  }

  v.kirchberg_flag = v.status == SimplicityStatus::Simple && (abs(hyp.det_f) != 1 || abs(hyp.det_g) != 1);
  return v;
}

}  // namespace qs
