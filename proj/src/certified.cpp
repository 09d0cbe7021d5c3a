#include "mlv/certified.hpp"

#include <stdexcept>

namespace mlv {

const ValOrInf& CertifiedVal::exact_value() const
{
    if (!is_exact()) throw std::runtime_error("value only certified as >= " + v_.str());
    return v_;
}

std::string CertifiedVal::str() const { return is_exact() ? v_.str() : ">= " + v_.str(); }

void CertifiedMin::add(const CertifiedVal& v)
{
    if (v.is_exact())
        best_exact_ = min(best_exact_, v.value());
    else
        best_bound_ = min(best_bound_, v.value());
}

CertifiedVal CertifiedMin::result() const
{
    if (best_exact_ <= best_bound_) return CertifiedVal::exact(best_exact_);
    return CertifiedVal::lower_bound(best_bound_.value());
}

} // namespace mlv
