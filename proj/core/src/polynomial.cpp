#include "quopt/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace quopt {

namespace {

void bump_variable_count(detail::TermMap &data, const std::vector<int> &idx) {
  for (int i : idx) {
    if (i < 0)
      throw ParameterError("negative variable index");
    if (i >= data.variable_count)
      data.variable_count = i + 1;
  }
}

void insert_term(detail::TermMap &data, std::vector<int> idx, double coeff) {
  if (idx.empty()) {
    data.constant += coeff;
    return;
  }
  auto it = data.terms.find(idx);
  if (it == data.terms.end()) {
    if (std::abs(coeff) > kCoeffEps)
      data.terms.emplace(std::move(idx), coeff);
  } else {
    it->second += coeff;
    if (std::abs(it->second) <= kCoeffEps)
      data.terms.erase(it);
  }
}

/// Sorts and collapses repeated indices: keep one copy under binary
/// semantics (x^2 = x), keep parity under spin semantics (z^2 = 1).
std::vector<int> reduce_indices(std::vector<int> idx, bool spin) {
  std::sort(idx.begin(), idx.end());
  std::vector<int> out;
  out.reserve(idx.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && idx[j] == idx[i])
      ++j;
    std::size_t run = j - i;
    if (spin) {
      if (run % 2 == 1)
        out.push_back(idx[i]);
    } else {
      out.push_back(idx[i]);
    }
    i = j;
  }
  return out;
}

} // namespace

void BinaryPolynomial::set_variable_count(int n) {
  if (!data_.terms.empty() && !data_.terms.rbegin()->first.empty() &&
      data_.terms.rbegin()->first.back() >= n)
    throw ParameterError("variable_count below an existing term index");
  data_.variable_count = n;
}

void BinaryPolynomial::add_term(std::vector<int> indices, double coeff) {
  auto idx = reduce_indices(std::move(indices), /*spin=*/false);
  bump_variable_count(data_, idx);
  insert_term(data_, std::move(idx), coeff);
}

void BinaryPolynomial::add(const BinaryPolynomial &other) {
  data_.constant += other.data_.constant;
  data_.variable_count =
      std::max(data_.variable_count, other.data_.variable_count);
  for (const auto &[idx, c] : other.data_.terms)
    insert_term(data_, idx, c);
}

BinaryPolynomial BinaryPolynomial::multiply(const BinaryPolynomial &other) const {
  BinaryPolynomial out(
      std::max(data_.variable_count, other.data_.variable_count));
  out.add_constant(data_.constant * other.data_.constant);
  for (const auto &[idx, c] : data_.terms)
    out.add_term(idx, c * other.data_.constant);
  for (const auto &[idx, c] : other.data_.terms)
    out.add_term(idx, c * data_.constant);
  for (const auto &[ia, ca] : data_.terms)
    for (const auto &[ib, cb] : other.data_.terms) {
      std::vector<int> merged = ia;
      merged.insert(merged.end(), ib.begin(), ib.end());
      out.add_term(std::move(merged), ca * cb);
    }
  return out;
}

double BinaryPolynomial::evaluate(const std::vector<int> &assignment) const {
  if (static_cast<int>(assignment.size()) != data_.variable_count)
    throw ParameterError("assignment length != variable_count");
  double value = data_.constant;
  for (const auto &[idx, c] : data_.terms) {
    int prod = 1;
    for (int i : idx)
      prod &= assignment[static_cast<std::size_t>(i)];
    if (prod)
      value += c;
  }
  return value;
}

IsingPolynomial BinaryPolynomial::to_ising() const {
  IsingPolynomial out(data_.variable_count);
  out.add_constant(data_.constant);
  // x_i = (1 - z_i)/2: each term expands over subsets of its index set.
  for (const auto &[idx, c] : data_.terms) {
    std::size_t k = idx.size();
    double scale = c / static_cast<double>(1ULL << k);
    std::size_t subsets = 1ULL << k;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<int> sub;
      int bits = 0;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (1ULL << b)) {
          sub.push_back(idx[b]);
          ++bits;
        }
      double sign = (bits % 2 == 0) ? 1.0 : -1.0;
      if (sub.empty())
        out.add_constant(sign * scale);
      else
        out.add_term(std::move(sub), sign * scale);
    }
  }
  return out;
}

void IsingPolynomial::set_qubit_count(int n) {
  if (!data_.terms.empty() && !data_.terms.rbegin()->first.empty() &&
      data_.terms.rbegin()->first.back() >= n)
    throw ParameterError("qubit_count below an existing term index");
  data_.variable_count = n;
}

void IsingPolynomial::add_term(std::vector<int> indices, double coeff) {
  auto idx = reduce_indices(std::move(indices), /*spin=*/true);
  bump_variable_count(data_, idx);
  insert_term(data_, std::move(idx), coeff);
}

void IsingPolynomial::add(const IsingPolynomial &other) {
  data_.constant += other.data_.constant;
  data_.variable_count =
      std::max(data_.variable_count, other.data_.variable_count);
  for (const auto &[idx, c] : other.data_.terms)
    insert_term(data_, idx, c);
}

double IsingPolynomial::energy(const std::string &bits) const {
  if (static_cast<int>(bits.size()) != data_.variable_count)
    throw ParameterError("bitstring length != qubit_count");
  return energy_of_index(parse_bits(bits));
}

double IsingPolynomial::energy_of_index(std::uint64_t index) const {
  double value = data_.constant;
  for (const auto &[idx, c] : data_.terms) {
    int parity = 0;
    for (int i : idx)
      parity ^= static_cast<int>((index >> i) & 1ULL);
    value += parity ? -c : c;
  }
  return value;
}

BinaryPolynomial IsingPolynomial::to_binary() const {
  BinaryPolynomial out(data_.variable_count);
  out.add_constant(data_.constant);
  // z_i = 1 - 2 x_i: each term expands with (-2)^|subset| coefficients.
  for (const auto &[idx, c] : data_.terms) {
    std::size_t k = idx.size();
    std::size_t subsets = 1ULL << k;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<int> sub;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (1ULL << b))
          sub.push_back(idx[b]);
      double factor = 1.0;
      for (std::size_t b = 0; b < sub.size(); ++b)
        factor *= -2.0;
      if (sub.empty())
        out.add_constant(c * factor);
      else
        out.add_term(std::move(sub), c * factor);
    }
  }
  return out;
}

SpectrumSummary IsingPolynomial::exact_solve() const {
  int n = data_.variable_count;
  if (n > 20)
    throw CapacityError("exact_solve supports at most 20 qubits, got " +
                        std::to_string(n));
  if (n == 0)
    throw CapacityError("degenerate spectrum: zero-qubit Hamiltonian");

  std::uint64_t dim = 1ULL << n;
  double ground = 0.0, excited = 0.0;
  std::vector<std::uint64_t> ground_idx, excited_idx;
  bool have_ground = false, have_excited = false;

  for (std::uint64_t k = 0; k < dim; ++k) {
    double e = energy_of_index(k);
    if (!have_ground || e < ground) {
      if (have_ground && (!have_excited || ground < excited)) {
        excited = ground;
        excited_idx = std::move(ground_idx);
        have_excited = true;
      }
      ground = e;
      ground_idx = {k};
      have_ground = true;
    } else if (e == ground) {
      ground_idx.push_back(k);
    } else if (!have_excited || e < excited) {
      excited = e;
      excited_idx = {k};
      have_excited = true;
    } else if (e == excited) {
      excited_idx.push_back(k);
    }
  }
  if (!have_excited)
    throw CapacityError("degenerate spectrum: all states share one energy");

  SpectrumSummary s;
  s.ground_energy = ground;
  s.first_excited_energy = excited;
  for (auto k : ground_idx)
    s.ground_states.push_back(format_bits(k, n));
  for (auto k : excited_idx)
    s.first_excited_states.push_back(format_bits(k, n));
  return s;
}

std::string render_hamiltonian(const IsingPolynomial &h) {
  // Sort by (order, indices); the std::map is ordered lexicographically, so
  // re-sort into the documented order.
  std::vector<const std::pair<const std::vector<int>, double> *> sorted;
  sorted.reserve(h.terms().size());
  for (const auto &t : h.terms())
    sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [](const auto *a, const auto *b) {
    if (a->first.size() != b->first.size())
      return a->first.size() < b->first.size();
    return a->first < b->first;
  });

  std::string out;
  for (const auto *t : sorted) {
    if (!out.empty())
      out += " + ";
    out += format_double(t->second);
    bool first_factor = true;
    for (int i : t->first) {
      out += first_factor ? " * Z" : " @ Z";
      out += std::to_string(i);
      first_factor = false;
    }
  }
  if (h.constant() != 0.0 || sorted.empty()) {
    if (!out.empty())
      out += " + ";
    out += format_double(h.constant());
  }
  return out;
}

IsingPolynomial parse_hamiltonian(const std::string &text, int qubit_count) {
  IsingPolynomial h;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
      ++pos;
  };

  skip_ws();
  bool first = true;
  while (pos < text.size()) {
    if (!first) {
      if (text[pos] != '+')
        throw DataError("expected '+' in Hamiltonian text at position " +
                        std::to_string(pos));
      ++pos;
      skip_ws();
    }
    first = false;

    const char *begin = text.c_str() + pos;
    char *end = nullptr;
    double coeff = std::strtod(begin, &end);
    if (end == begin)
      throw DataError("expected coefficient in Hamiltonian text at position " +
                      std::to_string(pos));
    pos += static_cast<std::size_t>(end - begin);
    skip_ws();

    std::vector<int> indices;
    while (pos < text.size() && (text[pos] == '*' || text[pos] == '@')) {
      char sep = text[pos];
      if ((indices.empty() && sep != '*') || (!indices.empty() && sep != '@'))
        throw DataError("malformed factor separator in Hamiltonian text");
      ++pos;
      skip_ws();
      if (pos >= text.size() || text[pos] != 'Z')
        throw DataError("expected Z<i> in Hamiltonian text at position " +
                        std::to_string(pos));
      ++pos;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (pos == start)
        throw DataError("expected qubit index after Z");
      indices.push_back(std::stoi(text.substr(start, pos - start)));
      skip_ws();
    }

    if (indices.empty())
      h.add_constant(coeff);
    else
      h.add_term(std::move(indices), coeff);
    skip_ws();
  }

  if (qubit_count >= 0)
    h.set_qubit_count(std::max(qubit_count, h.qubit_count()));
  return h;
}

} // namespace quopt
