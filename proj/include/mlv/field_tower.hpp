#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace mlv {

class FieldTower;

/// Element of one level of a FieldTower.
///
/// Level k has degree p^k over F_p. Coordinates are flattened: a level-k
/// element is sum_{b<p} A_b y_k^b with A_b in level k-1, and coords holds the
/// blocks A_0, A_1, ... in order. Level 0 is F_p with a single coordinate.
class FqElem {
public:
    using Coords = boost::container::small_vector<std::uint32_t, 4>;

    FqElem() = default;
    FqElem(const FieldTower* tower, int level, Coords coords);

    [[nodiscard]] const FieldTower* tower() const noexcept { return tower_; }
    [[nodiscard]] int level() const noexcept { return level_; }
    [[nodiscard]] const Coords& coords() const noexcept { return c_; }
    [[nodiscard]] std::uint32_t p() const;

    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] bool is_one() const noexcept;

    FqElem operator-() const;
    friend FqElem operator+(const FqElem& a, const FqElem& b);
    friend FqElem operator-(const FqElem& a, const FqElem& b);
    friend FqElem operator*(const FqElem& a, const FqElem& b);
    FqElem& operator+=(const FqElem& b) { return *this = *this + b; }
    FqElem& operator-=(const FqElem& b) { return *this = *this - b; }
    FqElem& operator*=(const FqElem& b) { return *this = *this * b; }
    friend bool operator==(const FqElem& a, const FqElem& b);

    [[nodiscard]] FqElem inv() const;
    [[nodiscard]] FqElem pow(std::uint64_t e) const;
    [[nodiscard]] FqElem frobenius() const;

    /// Same element expressed at a deeper level.
    [[nodiscard]] FqElem embed(int level) const;
    /// Same element at the lowest level containing it.
    [[nodiscard]] FqElem lowered() const;
    /// Value in F_p when the element lies in level 0.
    [[nodiscard]] std::optional<std::uint32_t> as_prime_field() const;

    /// Integer for prime-field elements, "{c0,c1,...}@k" otherwise.
    [[nodiscard]] std::string str() const;

private:
    const FieldTower* tower_ = nullptr;
    int level_ = 0;
    Coords c_;
};

/// Tower of Artin-Schreier extensions F_p = L_0 < L_1 < ... built on demand.
///
/// Level k >= 1 is L_{k-1}[y]/(y^p - y - theta_k), adjoined only when
/// x^p - x = theta_k has no root in L_{k-1}. Reads of existing levels are
/// lock-free; extension is serialized.
class FieldTower {
public:
    static constexpr int kMaxLevels = 12;

    explicit FieldTower(std::uint32_t p);
    FieldTower(const FieldTower&) = delete;
    FieldTower& operator=(const FieldTower&) = delete;

    [[nodiscard]] std::uint32_t p() const noexcept { return p_; }
    [[nodiscard]] int level_count() const noexcept { return count_.load(std::memory_order_acquire); }
    [[nodiscard]] std::size_t degree(int level) const;
    /// theta_k of the modulus y^p - y - theta_k of level k >= 1 (an element of level k-1).
    [[nodiscard]] const FqElem& modulus_theta(int level) const;

    [[nodiscard]] FqElem zero(int level = 0) const;
    [[nodiscard]] FqElem one(int level = 0) const;
    [[nodiscard]] FqElem from_int(std::int64_t v, int level = 0) const;
    /// The adjoined root y_k of level k >= 1.
    [[nodiscard]] FqElem generator(int level) const;

    /// x in `level` with x^p - x = theta, or nullopt when the F_p-linear system
    /// is inconsistent. Coordinates along the kernel F_p are zero.
    [[nodiscard]] std::optional<FqElem> as_solve(int level, const FqElem& theta) const;

    /// Adjoins a root of y^p - y - theta over the top level; theta must have no
    /// Artin-Schreier preimage there. Returns the new level index.
    int extend(const FqElem& theta);

    /// theta_1, ..., theta_n with theta_1 = 1 and AS(theta_{k+1}) = theta_k,
    /// extending the tower as needed.
    std::vector<FqElem> as_kernel_basis(int n);

    // Raw coordinate kernels used by FqElem.
    void mul_raw(int level, const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const;

private:
    struct Level {
        std::size_t degree = 1;
        FqElem theta;
    };

    std::uint32_t p_;
    std::array<Level, kMaxLevels> levels_{};
    std::atomic<int> count_{1};
    std::mutex extend_mutex_;
    std::vector<FqElem> kernel_basis_;
};

/// Solves A x = b over F_p (A row-major, rows x cols); free variables are 0.
std::optional<std::vector<std::uint32_t>> solve_mod_p(std::vector<std::vector<std::uint32_t>> a,
                                                      std::vector<std::uint32_t> b, std::uint32_t p);

} // namespace mlv
