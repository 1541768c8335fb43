#pragma once

#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "rng.hpp"

namespace hcol {

/// CNF formula over variables 1..n_vars; literal +i is x_i, -i its negation.
struct CnfFormula {
    int n_vars = 0;
    std::vector<std::vector<int>> clauses;

    void validate(std::optional<int> width = std::nullopt) const
    {
        require(n_vars >= 0, "cnf: negative variable count");
        for (const auto& c : clauses) {
            require(!c.empty(), "cnf: empty clause");
            for (int lit : c)
                require(lit != 0 && std::abs(lit) <= n_vars, "cnf: literal " + std::to_string(lit) + " out of range");
            if (width)
                require(static_cast<int>(c.size()) == *width, "cnf: clause width " + std::to_string(c.size()) + " differs from required width " + std::to_string(*width));
        }
    }

    bool operator==(const CnfFormula&) const = default;
};

inline CnfFormula parse_dimacs(std::istream& in)
{
    CnfFormula f;
    bool header = false;
    std::size_t expected = 0;
    std::vector<int> cur;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == 'c' || first[0] == '%')
            continue;
        if (first == "p") {
            std::string fmt;
            long long n = 0, m = 0;
            if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0)
                throw InvalidArgument("dimacs: malformed header: " + line);
            f.n_vars = static_cast<int>(n);
            expected = static_cast<std::size_t>(m);
            header = true;
            continue;
        }
        require(header, "dimacs: clause before header");
        std::istringstream all(line);
        long long lit = 0;
        while (all >> lit) {
            if (lit == 0) {
                require(!cur.empty(), "dimacs: empty clause");
                f.clauses.push_back(std::move(cur));
                cur.clear();
            } else {
                cur.push_back(static_cast<int>(lit));
            }
        }
        require(all.eof(), "dimacs: non-integer token in line: " + line);
    }
    require(header, "dimacs: missing header");
    require(cur.empty(), "dimacs: last clause not terminated by 0");
    require(f.clauses.size() == expected, "dimacs: header announces " + std::to_string(expected) + " clauses, found " + std::to_string(f.clauses.size()));
    f.validate();
    return f;
}

inline void write_dimacs(std::ostream& out, const CnfFormula& f)
{
    out << "p cnf " << f.n_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (int lit : c)
            out << lit << ' ';
        out << "0\n";
    }
}

/// Exhaustive NAE-satisfiability: some assignment gives every clause a true and a false literal.
inline bool nae_sat_brute(const CnfFormula& f, const Ceilings& c = default_ceilings())
{
    f.validate();
    check_ceiling(static_cast<std::size_t>(f.n_vars), c.nae_vars, "nae_sat_brute variable count");
    const std::uint64_t total = std::uint64_t{1} << f.n_vars;
    for (std::uint64_t a = 0; a < total; ++a) {
        bool ok = true;
        for (const auto& cl : f.clauses) {
            bool has_true = false, has_false = false;
            for (int lit : cl) {
                const bool val = ((a >> (std::abs(lit) - 1)) & 1u) != 0;
                (val == (lit > 0) ? has_true : has_false) = true;
            }
            if (!(has_true && has_false)) {
                ok = false;
                break;
            }
        }
        if (ok)
            return true;
    }
    return false;
}

/// m clauses of the given width, each literal an independent uniform variable and sign.
inline CnfFormula random_cnf(int n_vars, int m, int width, Rng& rng)
{
    require(n_vars >= 1 && m >= 0 && width >= 1, "random_cnf: bad parameters");
    CnfFormula f{n_vars, {}};
    for (int i = 0; i < m; ++i) {
        std::vector<int> cl;
        for (int j = 0; j < width; ++j) {
            const int v = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_vars)));
            cl.push_back(coin(rng) ? v : -v);
        }
        f.clauses.push_back(std::move(cl));
    }
    return f;
}

} // namespace hcol
