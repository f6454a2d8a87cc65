#pragma once

#include "relchar/chains.hpp"

namespace relchar::testutil {

inline ZChain random_chain(Rng& rng, const SetPtr& s, int degree, long long bound = 3) {
    ZChain c(s, degree);
    for (int i = 0; i < s->count(degree); ++i) {
        Integer v = rng.small_int(bound);
        if (v != 0)
            c.add(i, v);
    }
    return c;
}

inline ZCochain random_cochain(Rng& rng, const SetPtr& s, int degree, long long bound = 3) {
    ZCochain c(s, degree);
    for (int i = 0; i < s->count(degree); ++i) {
        Integer v = rng.small_int(bound);
        if (v != 0)
            c.add(i, v);
    }
    return c;
}

inline QCochain random_rational_cochain(Rng& rng, const SetPtr& s, int degree) {
    QCochain c(s, degree);
    for (int i = 0; i < s->count(degree); ++i) {
        Rational v = rng.small_rational();
        if (v != 0)
            c.add(i, v);
    }
    return c;
}

inline QChain random_rational_chain(Rng& rng, const SetPtr& s, int degree) {
    QChain c(s, degree);
    for (int i = 0; i < s->count(degree); ++i) {
        Rational v = rng.small_rational();
        if (v != 0)
            c.add(i, v);
    }
    return c;
}

} // namespace relchar::testutil
