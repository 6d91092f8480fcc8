#include "casimir/quadrature.hpp"

namespace casimir {

template QuadratureRule<double> gauss_laguerre_rule<double>(Eigen::Index);
template QuadratureRule<double> double_exponential_rule<double>(Eigen::Index);
template QuadratureRule<double> make_rule<double>(QuadratureKind, Eigen::Index);

} // namespace casimir
