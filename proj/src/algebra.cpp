#include "drb/algebra.hpp"

namespace drb {

AlgebraHandle<Scalar> scalar_algebra() {
    AlgebraHandle<Scalar> h;
    h.name = "scalar";
    h.add = [](const Scalar &a, const Scalar &b) { return a + b; };
    h.mul = [](const Scalar &a, const Scalar &b) { return a * b; };
    h.scale = [](const Scalar &c, const Scalar &a) { return c * a; };
    h.zero = [] { return Scalar(); };
    h.one = [] { return Scalar(1L); };
    h.equal = [](const Scalar &a, const Scalar &b) { return a == b; };
    h.show = [](const Scalar &a) { return a.to_string(); };
    return h;
}

}  // namespace drb
