// Writes the sample instance files: make_samples <instances dir> <invalid dir>
#include <cmath>
#include <fstream>
#include <iostream>

#include "netnorm/instances.hpp"
#include "netnorm/io.hpp"
#include "netnorm/rng.hpp"

using namespace netnorm;

namespace {

CMatrix ket_bra(int d, int i) {
  CMatrix m = CMatrix::Zero(d, d);
  m(i, i) = 1;
  return m;
}

void write(const std::string& dir, const std::string& name, const io::Instance& inst) {
  std::ofstream out(dir + "/" + name + ".json");
  out << io::instance_to_json(inst).dump(1) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: make_samples <instances dir> <invalid dir>\n";
    return 1;
  }
  const std::string dir = argv[1];
  const std::string bad = argv[2];

  write(dir, "locc_projector", {"locc", OneWayLOCC{2, 2, {{ket_bra(2, 0), ket_bra(2, 0)}}}});
  write(dir, "locc_classical_copy",
        {"locc", OneWayLOCC{2, 2, {{ket_bra(2, 0), ket_bra(2, 0)}, {ket_bra(2, 1), ket_bra(2, 1)}}}});
  {
    Rng rng = make_rng(1, {0x5a});
    write(dir, "locc_random_d2_n3", {"locc", random_locc(rng, 2, 2, 3)});
  }
  {
    Rng rng = make_rng(2, {0x5a});
    const CMatrix y = random_effect(rng, 2);
    const CMatrix x = random_effect(rng, 2) / 20.0;
    OneWayLOCC m{2, 2, {}};
    for (int i = 0; i < 20; ++i) m.terms.push_back({x, y});
    write(dir, "locc_duplicates", {"locc", m});
  }
  write(dir, "multiparty_projector_l3", {"multiparty", product_projector_tree(3, 2)});
  {
    Rng rng = make_rng(3, {0x5a});
    write(dir, "multiparty_and_l3", {"multiparty", classical_and_tree(rng, 3)});
  }
  {
    Rng rng = make_rng(4, {0x5a});
    write(dir, "multiparty_random_l2", {"multiparty", random_tree(rng, {2, 2}, 2)});
  }
  write(dir, "channel_depolarizing_d2", {"channel", depolarizing_channel(2)});
  write(dir, "channel_depolarizing_d3", {"channel", depolarizing_channel(3)});
  write(dir, "channel_dephasing_d2", {"channel", dephasing_channel(2)});
  {
    Rng rng = make_rng(5, {0x5a});
    write(dir, "channel_random_d2_n3", {"channel", random_eb_channel(rng, 2, 2, 3)});
  }
  {
    Rng rng = make_rng(6, {0x5a});
    write(dir, "matrix_random_4x6", {"matrix", random_real_matrix(rng, 4, 6)});
  }
  {
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 2;
    a(1, 1) = 1;
    write(dir, "matrix_diag_2_1", {"matrix", a});
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    write(dir, "matrix_rotation", {"matrix", CMatrix(h / std::sqrt(2.0))});
  }
  {
    Rng rng = make_rng(7, {0x5a});
    write(dir, "general_s2_d2_n3", {"general", random_general(rng, 2, 3, banach_constants(Family::schatten, 2.0, 2))});
  }
  {
    Rng rng = make_rng(8, {0x5a});
    const BanachDescriptor l4 = banach_constants(Family::ell, 4.0, 3);
    InjectiveProblem p{InputBall::l2, 3, {}, {}, l4};
    for (int i = 0; i < 3; ++i) {
      p.functionals.push_back(random_real_matrix(rng, 3, 1));
      CMatrix y = random_real_matrix(rng, 3, 1);
      p.ys.push_back(y / ell_norm(RVector(y.real().reshaped()), 4.0));
    }
    const double scale = factorization_bound(p).first;
    for (auto& x : p.functionals) x /= scale;
    write(dir, "injective_l2_l4", {"injective", p});
  }
  {
    Rng rng = make_rng(9, {0x5a});
    const BanachDescriptor s2 = banach_constants(Family::schatten, 2.0, 2);
    const GeneralDecomposition g = random_general(rng, 2, 2, s2);
    write(dir, "injective_s1_psd", {"injective", InjectiveProblem{InputBall::trace_ball, 2, g.X, g.Y, s2}});
  }

  // invalid: sum X exceeds the identity
  write(bad, "locc_sum_exceeds_identity",
        {"locc", OneWayLOCC{2, 2, {{ket_bra(2, 0), ket_bra(2, 0)}, {CMatrix::Identity(2, 2), ket_bra(2, 1)}}}});
  // invalid: Y not below the identity
  write(bad, "channel_y_not_density", {"channel", EBChannel{2, 2, {{CMatrix::Identity(2, 2), 2.0 * ket_bra(2, 0)}}}});
  {
    std::ofstream out(bad + "/malformed_entries.json");
    out << "{\n \"kind\": \"matrix\",\n \"matrix\": {\"dim\": 2, \"entries\": [[1, 0], [0, 0], [0]]}\n}\n";
  }
  {
    std::ofstream out(bad + "/malformed_syntax.json");
    out << "{\n \"kind\": \"locc\",\n \"d1\": 2,\n \"d2\": 2\n \"terms\": []\n}\n";
  }
  return 0;
}
