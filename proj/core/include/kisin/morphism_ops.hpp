#pragma once

#include <vector>

#include "kisin/phi_module.hpp"

namespace kisin {

struct SubobjectResult {
    PhiModule module;
    PhiMorphism inclusion;  // module -> ambient
};

struct CokernelResult {
    PhiModule module;              // torsion-free part of the cokernel
    PhiMorphism projection;        // target -> module
    std::vector<int> torsion;      // exponents a > 0 of the summands k[[u]]/u^a
    int torsion_length() const;
};

// Free basis of ker(mat) via the Smith form, with the induced Frobenius.
SubobjectResult kernel(const PhiMorphism& f);
// Column span of mat inside the target.
SubobjectResult image(const PhiMorphism& f);
// Target modulo the saturation of the image.
CokernelResult cokernel_mod_torsion(const PhiMorphism& f);

}  // namespace kisin
