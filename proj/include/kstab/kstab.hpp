#pragma once

// Umbrella header: exact algebra (rationals, polynomials, ideals, initial
// ideals, Hilbert data, Futaki invariants), numerical geometry on plane
// curves (quadrature substrate, Bergman potentials, scalar curvature,
// K-energy, Psi fiber integrals), slope fitting, the asymptotic-identity
// verification pipeline, and report plumbing.

#include "kstab/bergman.hpp"
#include "kstab/complexpoly.hpp"
#include "kstab/curve.hpp"
#include "kstab/fit.hpp"
#include "kstab/futaki.hpp"
#include "kstab/groebner.hpp"
#include "kstab/hilbert.hpp"
#include "kstab/ideal.hpp"
#include "kstab/identities.hpp"
#include "kstab/jobconfig.hpp"
#include "kstab/kenergy.hpp"
#include "kstab/linalg.hpp"
#include "kstab/monomial.hpp"
#include "kstab/multipoly.hpp"
#include "kstab/parallel.hpp"
#include "kstab/parse.hpp"
#include "kstab/psi.hpp"
#include "kstab/rational.hpp"
#include "kstab/report.hpp"
#include "kstab/roots.hpp"
#include "kstab/series.hpp"
#include "kstab/slope.hpp"
#include "kstab/unipoly.hpp"
#include "kstab/verify.hpp"
