#include <doctest.h>

#include "desk_models.hpp"
#include "sovxxz/tq_hom.hpp"
#include "sovxxz/tq_inhom.hpp"

using namespace sovxxz;
using namespace sovxxz::testing;

namespace {

using Table = std::vector<std::vector<cplx>>;

// Reference values from tests/oracle/frozen_values.py (40-digit arithmetic).
const Table kD2Spectrum = {
    {{-0.15289217121571448, -0.085465824163548296}, {0.15289217121571448, 0.085465824163548296}},
    {{-0.11867781660251593, -0.068953764992591947}, {-0.11867781660251593, -0.068953764992591947}},
    {{0.11867781660251593, 0.068953764992591947}, {0.11867781660251593, 0.068953764992591947}},
    {{0.15289217121571448, 0.085465824163548296}, {-0.15289217121571448, -0.085465824163548296}},
};

const Table kD2HomRoots = {
    {{0.057261900071544524, 6.2256285933446107}, {0.64273809992845548, 0.08755671383497576}},
    {{0.15245921745701628, 6.2419295335841862}, {0.54754078254298372, 3.2128484271851936}},
    {{0.15245921745701628, 3.1003368799943929}, {0.54754078254298372, 0.07125577359540032}},
    {{0.057261900071544524, 3.0840359397548175}, {0.64273809992845548, 3.229149367424769}},
};

const Table kD2InhomRoots = {
    {{0.033318759397645772, 3.0780738355314898}, {0.58826840422098043, 0.067668835354397918}},
    {{-0.079083861148667569, 3.1018035163765095}, {0.23562032638415619, 0.0063716700226624281}},
    {{-1.0121579948879552, 2.4309063107659892}, {0.51943377790681642, 0.05940680456204136}},
    {{-0.0052682856574210458, 0.41632369622836087}, {0.059200662241176931, 2.6579568672072936}},
};

const Table kD3Spectrum = {
    {{-0.15416398563536523, -0.087187061743372523}, {0.31088892913669499, 0.17808773092764634}},
    {{-0.073052189959900794, -0.051928031387165365}, {0.083650639278733132, 0.038660095952010786}},
    {{-0.070524543096456862, -0.048562732954648264}, {-0.22723828985796186, -0.13942763497563555}},
    {{0.070524543096456862, 0.048562732954648264}, {0.22723828985796186, 0.13942763497563555}},
    {{0.073052189959900794, 0.051928031387165365}, {-0.083650639278733132, -0.038660095952010786}},
    {{0.15416398563536523, 0.087187061743372523}, {-0.31088892913669499, -0.17808773092764634}},
};

const Table kD3HomRoots = {
    {{0.0083286851460464699, 6.2166252462993109}, {0.44013709264436358, 0.041620537468551648}, {0.85153422220958995, 0.13493952341172393}},
    {{0.12797163018453301, 6.2354102215240299}, {0.47190176214698788, 3.2022919540020707}, {0.7001266076684791, 0.097075785243279127}},
    {{0.2280982527021038, 6.2524859929991389}, {0.30753489119760307, 3.1616074565288437}, {0.76436685610029312, 3.2622771648311903}},
    {{0.2280982527021038, 3.1108933394093457}, {0.30753489119760307, 0.020014802939050486}, {0.76436685610029312, 0.12068451124139708}},
    {{0.12797163018453301, 3.0938175679342366}, {0.47190176214698788, 0.060699300412277477}, {0.7001266076684791, 3.2386684388330724}},
    {{0.0083286851460464699, 3.0750325927095177}, {0.44013709264436358, 3.1832131910583449}, {0.85153422220958995, 3.2765321770015172}},
};

const Table kD3InhomRoots = {
    {{-0.016518871413198623, 3.0672427844784485}, {0.38329012714298822, 0.021980991746513606}, {0.7895669640690396, 0.11021087468570521}},
    {{-0.21237200133428463, 3.0910259487392059}, {0.17831135992745268, 3.1241662681822167}, {0.67479443293879785, 0.088218160634085393}},
    {{0.20111346307436951, 0.38235024628908099}, {0.21415703859287052, 3.0856485384711175}, {0.21982681096501431, 2.8300368545369158}},
    {{-0.73882677601544736, 2.847114255888678}, {0.30166558200899537, 0.015395042959530999}, {0.72140076553322398, 0.10249191974960525}},
    {{0.029446884662823231, 0.35081482819888502}, {0.071615954455515877, 2.7120760833569174}, {0.49002985062004116, 0.070230785042185213}},
    {{-0.41335149924566595, 3.0400809302892308}, {0.32666681241123152, 0.58277354809958486}, {0.41991310322881603, 2.6279307737046397}},
};

const Table kD4Spectrum = {
    {{-0.147047920051384, -0.16507019508499686}, {0.060425705925675177, 0.062202838189287142}, {-0.147047920051384, -0.16507019508499686}},
    {{-0.12448273610095634, -0.14442846195122802}, {0.059698712109678438, 0.060333499476514209}, {0.10850713903675259, 0.1252232782893059}},
    {{-0.10850713903675259, -0.1252232782893059}, {-0.059698712109678438, -0.060333499476514209}, {0.12448273610095634, 0.14442846195122802}},
    {{-0.10511775068423059, -0.12453894305265309}, {-0.033017145990732039, -0.037138092393319624}, {-0.10511775068423059, -0.12453894305265309}},
    {{0.10511775068423059, 0.12453894305265309}, {0.033017145990732039, 0.037138092393319624}, {0.10511775068423059, 0.12453894305265309}},
    {{0.10850713903675259, 0.1252232782893059}, {0.059698712109678438, 0.060333499476514209}, {-0.12448273610095634, -0.14442846195122802}},
    {{0.12448273610095634, 0.14442846195122802}, {-0.059698712109678438, -0.060333499476514209}, {-0.10850713903675259, -0.1252232782893059}},
    {{0.147047920051384, 0.16507019508499686}, {-0.060425705925675177, -0.062202838189287142}, {0.147047920051384, 0.16507019508499686}},
};

const std::vector<cplx> kXi2{cplx(0.1, -0.05), cplx(0.6, 0.08)};
const std::vector<cplx> kXi3{cplx(0.1, -0.05), cplx(0.6, 0.08), cplx(1.1, 0.21)};

std::vector<EigenvalueFunction> table_spectrum(const ChainModel& m, const Table& t) {
  std::vector<EigenvalueFunction> out;
  for (const auto& row : t) out.emplace_back(m, row);
  return out;
}

void check_spectrum(const ChainModel& m, const Table& expected) {
  Rng rng(71);
  std::vector<EigenvalueFunction> got;
  for (const auto& e : brute_force_spectrum(m, rng)) got.push_back(e.t);
  REQUIRE(got.size() == expected.size());
  CHECK(spectrum_distance(got, table_spectrum(m, expected)) < 1e-12);
  for (std::size_t k = 0; k < got.size(); ++k)
    CHECK(eigenvalue_distance(m, got[k], EigenvalueFunction(m, expected[k])) < 1e-12);
}

void check_roots(const ChainModel& m, const Table& spectrum, const Table& hom, const Table& inhom) {
  Rng rng(72);
  auto ts = table_spectrum(m, spectrum);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    QFunctionHom qh = solve_q_hom(m, ts[k], rng);
    CHECK(multiset_distance(qh.roots, hom[k], 2 * kPi) < 1e-10);
    QFunctionInhom qi = solve_q_inhom(m, ts[k], 0.0, draw_zeta0(m, rng));
    CHECK(multiset_distance(qi.roots, inhom[k], kPi) < 1e-10);
  }
}

}  // namespace

TEST_CASE("spectrum of two spin-1/2 sites") {
  check_spectrum(ChainModel({1, 1}, kXi2, kEta), kD2Spectrum);
  check_spectrum(ChainModel({1, 1}, kXi2, kEta, 2.0), kD2Spectrum);
}

TEST_CASE("spectrum of spins (1/2, 1)") {
  check_spectrum(ChainModel({1, 2}, kXi2, kEta), kD3Spectrum);
  check_spectrum(ChainModel({1, 2}, kXi2, kEta, std::polar(1.0, 0.3)), kD3Spectrum);
}

TEST_CASE("spectrum of three spin-1/2 sites") {
  check_spectrum(ChainModel({1, 1, 1}, kXi3, kEta), kD4Spectrum);
}

TEST_CASE("Q roots of two spin-1/2 sites") {
  check_roots(ChainModel({1, 1}, kXi2, kEta), kD2Spectrum, kD2HomRoots, kD2InhomRoots);
}

TEST_CASE("Q roots of spins (1/2, 1)") {
  check_roots(ChainModel({1, 2}, kXi2, kEta), kD3Spectrum, kD3HomRoots, kD3InhomRoots);
}
