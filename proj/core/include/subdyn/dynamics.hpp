#pragma once

#include "subdyn/groebner.hpp"
#include "subdyn/real.hpp"
#include "subdyn/resultant.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace subdyn {

// A morphism of P^N: N+1 homogeneous forms of common degree with nonvanishing
// Macaulay resultant.
class Morphism {
public:
    Morphism() = default;
    static Morphism make(RingPtr ring, std::vector<Polynomial> coords);

    const RingPtr& ring() const { return ring_; }
    int ambient_N() const { return static_cast<int>(ring_->nvars()) - 1; }
    unsigned degree() const { return degree_; }
    const std::vector<Polynomial>& coords() const { return coords_; }

    // Q only: the coordinate tuple cleared to a jointly primitive integer
    // vector with deterministic sign.
    const std::vector<Polynomial>& primitive_integer_coords() const;
    // Q only: the (integer) Macaulay resultant of the primitive coords.
    const BigInt& integer_resultant() const;
    // Q only: ln max |coefficient| over the primitive coords.
    Real height() const;

    Morphism iterate(unsigned n) const;

private:
    RingPtr ring_;
    std::vector<Polynomial> coords_;
    unsigned degree_ = 1;
    struct QCache;
    std::shared_ptr<QCache> qcache_;
};

// Ambient dimension plus homogeneous generators; canonical form, codimension
// and degree are cached write-once.
class Subvariety {
public:
    Subvariety() = default;
    static Subvariety make(RingPtr ring, std::vector<Polynomial> gens);

    const RingPtr& ring() const { return ring_; }
    int ambient_N() const { return static_cast<int>(ring_->nvars()) - 1; }
    const std::vector<Polynomial>& gens() const { return gens_; }

    // Reduced grevlex basis with normalized generators: the canonical form
    // used for equality, hashing and printing.
    const std::vector<Polynomial>& canonical_basis() const;
    std::string canonical_key() const;
    long dimension() const;
    long codimension() const;
    BigInt degree() const;

    bool same_variety(const Subvariety& other) const;

private:
    RingPtr ring_;
    std::vector<Polynomial> gens_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

// Prop-style forward image via weighted elimination: image variables carry
// weight d so the graph ideal is weighted homogeneous. Hypersurface images
// are replaced by their square-free part.
Subvariety forward_image(const Morphism& f, const Subvariety& X,
                         const GroebnerBudget& budget = {});

// g(f_0, ..., f_N): homogeneous of degree deg(g) * d.
Polynomial compose(const Polynomial& g, const Morphism& f);

// Generators g_i(f); the scheme-theoretic preimage presentation.
Subvariety preimage(const Morphism& f, const Subvariety& X);
// Square-free generator form of a hypersurface preimage.
Subvariety reduced_preimage(const Morphism& f, const Subvariety& X);

bool good_reduction(const Morphism& f, unsigned long p);
Morphism reduce_mod_p(const Morphism& f, unsigned long p);
Subvariety reduce_mod_p(const Subvariety& X, unsigned long p);

struct OrbitStep {
    std::size_t key_hash = 0;
    BigInt degree;
    std::vector<std::string> basis;
};

struct OrbitReport {
    unsigned tail = 0;
    std::optional<unsigned> period;
    std::vector<OrbitStep> steps;
    bool degree_capped = false;

    // One line per iterate: `step=<i> degree=<D> basis=<g1; g2>`, then a
    // final `tail=<t> period=<n>` line.
    std::string serialize() const;
};

// Iterates forward_image with canonical-form cycle detection. A positive
// degree_cap stops exploration once the next image could exceed it.
OrbitReport iterate_orbit(const Morphism& f, const Subvariety& X, unsigned max_steps,
                          const BigInt& degree_cap = 0, const GroebnerBudget& budget = {});

// Resultant route for hypersurface images: eliminates the source variables
// from {g, y_j f_0 - y_0 f_j} with the image coordinates as parameters.
struct ImageViaResultant {
    Polynomial raw;        // the resultant, in the image coordinates
    Polynomial image_form; // decontaminated square-free form cutting f(V(g))
    unsigned power = 1;    // k when raw is a perfect k-th power
    bool used_groebner_fallback = false;
};
ImageViaResultant image_via_resultant(const Morphism& f, const Polynomial& g,
                                      const MacaulayOptions& opts = {},
                                      const GroebnerBudget& budget = {});

// Fresh identifiers (base0, base1, ...) avoiding every name in `taken`.
std::vector<std::string> fresh_names(const std::string& base, std::size_t count,
                                     const std::vector<std::string>& taken);

} // namespace subdyn
