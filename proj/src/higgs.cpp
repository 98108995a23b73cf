#include "gml/higgs.hpp"

namespace gml {

Chart parse_chart(const std::string& name) {
    if (name == "rst") return Chart::RST;
    if (name == "bertram") return Chart::Bertram;
    if (name == "nr") return Chart::NR;
    raise(Errc::ParseError, "unknown chart '" + name + "'");
}

std::string chart_name(Chart c) {
    switch (c) {
    case Chart::RST: return "rst";
    case Chart::Bertram: return "bertram";
    case Chart::NR: return "nr";
    }
    return "?";
}

HamiltonianTag parse_hamiltonian(const std::string& name) {
    if (name == "h0") return HamiltonianTag::H0;
    if (name == "h1") return HamiltonianTag::H1;
    if (name == "h2") return HamiltonianTag::H2;
    raise(Errc::ParseError, "unknown Hamiltonian '" + name + "'");
}

CotangentPoint<MultiQuad> nr_to_sym_covector(const HudsonForms& h, const std::array<Rational, 3>& v,
                                             const std::array<Rational, 3>& mu) {
    using MQ = MultiQuad;
    std::array<MQ, 3> vm{MQ(v[0]), MQ(v[1]), MQ(v[2])}, mum{MQ(mu[0]), MQ(mu[1]), MQ(mu[2])};
    auto tm = lift_matrix(h.t_map);
    auto phi = [&](const std::array<Dual<MQ>, 3>& p) { return nr_to_sym_affine(tm, p); };
    return {nr_to_sym_affine(h.t_map, vm), push_covector<MQ>(phi, vm, mum)};
}

} // namespace gml
