#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace powk0 {

enum class GroupKind { Cyclic, ElemAbelian, Dihedral, Cayley };

/// Parametric or table-backed description of a finite group.
struct GroupSpec {
    GroupKind kind = GroupKind::Cyclic;
    unsigned long m = 1;  // cyclic: order
    unsigned long p = 0;  // elem-abelian: prime
    unsigned long r = 0;  // elem-abelian: rank
    unsigned long n = 0;  // dihedral: polygon size (order 2n)
    std::vector<std::vector<std::size_t>> table; // cayley
    /// Cayley associativity is O(order^3); orders past 256 need this set.
    bool trust_cayley = false;

    static GroupSpec cyclic(unsigned long m);
    static GroupSpec elem_abelian(unsigned long p, unsigned long r);
    static GroupSpec dihedral(unsigned long n);
    static GroupSpec cayley(std::vector<std::vector<std::size_t>> table);

    /// CLI grammar: cyclic:M | elem-abelian:P,R | dihedral:N | cayley:PATH
    /// (cayley:PATH loads {"order": n, "table": [[...]]} from the file).
    static GroupSpec parse(const std::string& text);

    std::string describe() const;
};

/// Finite group with elements indexed 0..order-1. Immutable once built.
/// Indexing: cyclic = residues (identity 0); elem-abelian = base-p digit
/// vectors (index = sum d_j p^j); dihedral = rotations r^k then reflections
/// r^k s; cayley = table order.
class Group {
public:
    std::size_t order() const { return order_; }
    std::size_t identity() const { return identity_; }
    std::size_t multiply(std::size_t a, std::size_t b) const;
    const GroupSpec& spec() const { return spec_; }
    std::string element_label(std::size_t x) const;

private:
    friend Group make_group(const GroupSpec&);
    GroupSpec spec_;
    std::size_t order_ = 1;
    std::size_t identity_ = 0;
};

/// Validates the spec (primality, Cayley group axioms; reports the first
/// violated axiom) and builds the group.
Group make_group(const GroupSpec& spec);

/// Least t >= 1 with x^t = identity.
std::size_t element_order(const Group& g, std::size_t x);

/// The cyclic subgroup <x> = {x^t : t >= 0}, ascending element indices.
std::vector<std::size_t> cyclic_subgroup(const Group& g, std::size_t x);

/// lcm of the element orders.
unsigned long exponent(const Group& g);

/// Cayley-table JSON: {"order": n, "table": [[int;n];n]}.
nlohmann::json cayley_to_json(const Group& g);
std::vector<std::vector<std::size_t>> cayley_table_from_json(const nlohmann::json& j);

/// Full multiplication table of any group (row i, col j = i*j).
std::vector<std::vector<std::size_t>> multiplication_table(const Group& g);

} // namespace powk0
