#include "crange/examples.hpp"

#include <cmath>

#include "crange/linalg.hpp"

namespace crange {

ExampleRangeData example_range_data(int index) {
    switch (index) {
        case 1: {
            ExampleRangeData d{CMat::Zero(2, 2), CMat::Zero(2, 2),
                               GroupSpec::torus({1, -1}), 10000};
            d.a(1, 0) = 1.0;
            d.c = d.a;
            return d;
        }
        case 2: {
            CMat a1(2, 2), a2(2, 2), c1(2, 2);
            a1 << 1, 0, 0, -1;
            a2 << Complex(1, 1), 0, 0, Complex(1, -1);
            c1 << 1, 0, 0, 0;
            ExampleRangeData d{kron(c1, c1), kron(a1, a2),
                               GroupSpec::tensor_prod(GroupSpec::full_unitary(2),
                                                      GroupSpec::full_unitary(2)),
                               50000};
            return d;
        }
        case 3: {
            CMat a1(2, 2), c1(2, 2);
            a1 << 1, 0, 0, std::polar(1.0, 2.0 * M_PI / 3.0);
            c1 << 1, 0, 0, 0;
            ExampleRangeData d{kron(kron(c1, c1), c1), kron(kron(a1, a1), a1),
                               GroupSpec::tensor_prod(
                                   GroupSpec::tensor_prod(GroupSpec::full_unitary(2),
                                                          GroupSpec::full_unitary(2)),
                                   GroupSpec::full_unitary(2)),
                               100000};
            return d;
        }
        default:
            throw std::invalid_argument("example_range_data: index must be 1, 2 or 3");
    }
}

CMat example4_matrix() {
    CMat a = CMat::Zero(4, 4);
    a(1, 0) = a(2, 0) = a(3, 0) = 1.0;
    return a;
}

ReflectionPair example5_data() {
    ReflectionPair p;
    p.a = CMat(2, 2);
    p.a << 1, 1, 1, -1;
    p.u0 = CMat(2, 2);
    p.u0 << 0, 1, -1, 0;
    p.omega0 = (M_PI / 2.0) * p.u0;
    return p;
}

} // namespace crange
