// Coefficient tables generated by tools/gen_temme_coefficients.py.

#include <array>
#include <cmath>
#include <span>

#include "knsaw/errors.hpp"
#include "knsaw/gamma_kernel.hpp"

namespace knsaw {
namespace {

// a_{k,l}, the coefficients of q_k(xi). q_3 is used only for error estimates.
constexpr std::array<double, 1> kQ0 = {1.0};
constexpr std::array<double, 3> kQ1 = {1.0, 1.0, 1.0 / 12};
constexpr std::array<double, 5> kQ2 = {3.0, 5.0, 25.0 / 12, 1.0 / 12, 1.0 / 288};
constexpr std::array<double, 7> kQ3 = {15.0, 35.0, 105.0 / 4, 77.0 / 12, 49.0 / 288, 1.0 / 288, -139.0 / 51840};

// Maclaurin coefficients of c_k(eta); radius of convergence 2 sqrt(pi).
constexpr int kSeriesLength = 26;
constexpr std::array<std::array<double, kSeriesLength>, 4> kCSeries = {{
    {-3.33333333333333315e-01, 8.33333333333333287e-02,  -1.48148148148148154e-02, 1.15740740740740734e-03,
     3.52733686067019424e-04,  -1.78755144032921798e-04, 3.91926317852243767e-05,  -2.18544851067999198e-06,
     -1.85406221071515997e-06, 8.29671134095308652e-07,  -1.76659527368260782e-07, 6.70785354340149841e-09,
     1.02618097842403086e-08,  -4.38203601845335294e-09, 9.14769958223679021e-10,  -2.55141939949462482e-11,
     -5.83077213255042561e-11, 2.43619480206674150e-11,  -5.02766928011417551e-12, 1.10043920319561348e-13,
     3.37176326240098514e-13,  -1.39238872241816207e-13, 2.85348938070474453e-14,  -5.13911183424257231e-16,
     -1.97522882943494422e-15, 8.09952115670456128e-16},
    {-1.85185185185185192e-03, -3.47222222222222203e-03, 2.64550264550264536e-03,  -9.90226337448559630e-04,
     2.05761316872427979e-04,  -4.01877572016460897e-07, -1.80985503344899767e-05, 7.64916091608110982e-06,
     -1.61209008945634465e-06, 4.64712780280743402e-09,  1.37863344691572092e-07,  -5.75254560351770471e-08,
     1.19516285997781477e-08,  -1.75432417197476467e-11, -1.00915437106004126e-09, 4.16279299184258280e-10,
     -8.56390702649298013e-11, 6.06721510160475823e-14,  7.16249896481148557e-12,  -2.93318664377143705e-12,
     5.99669636568368853e-13,  -2.16717865273233131e-16, -4.97833997236926173e-14, 2.02916288237134252e-14,
     -4.13125571381060994e-15, 8.28651623988309668e-19},
    {4.13359788359788337e-03,  -2.68132716049382727e-03, 7.71604938271604895e-04,  2.00938786008230470e-06,
     -1.07366532263651599e-04, 5.29234488291201250e-05,  -1.27606351886187284e-05, 3.42357873409613781e-08,
     1.37219573090629342e-06,  -6.29899213838005482e-07, 1.42806142060642425e-07,  -2.04770984219908661e-10,
     -1.40925299108675203e-08, 6.22897408492202184e-09,  -1.36704883966171141e-09, 9.42835615901467795e-13,
     1.28722524000893180e-10,  -5.56459561343633233e-11, 1.19759355463669806e-11,  -4.16897822518386344e-15,
     -1.09406404278845948e-12, 4.66223994639013565e-13,  -9.90510576390690656e-14, 1.89318767683735153e-17,
     8.85922187259112653e-15,  -3.73782039804640529e-15},
    {6.49434156378600773e-04,  2.29472093621399168e-04,  -4.69189494395255702e-04, 2.67720632062838854e-04,
     -7.56180167188397662e-05, -2.39650511386729680e-07, 1.10826541153473025e-05,  -5.67495282699159655e-06,
     1.42309007324358833e-06,  -2.78610802915281434e-11, -1.69584040919302782e-07, 8.09946490538808268e-08,
     -1.91111684859736545e-08, 2.39286204398081180e-12,  2.06201318154887967e-09,  -9.46049666185513302e-10,
     2.15410497757749067e-10,  -1.38882333681390304e-14, -2.18947616819639379e-11, 9.79099895117168436e-12,
     -2.17821918801809609e-12, 6.20881957340790081e-17,  2.12697836327973708e-13,  -9.34468879151743301e-14,
     2.04536712267828492e-14,  -2.58260790403495020e-19},
}};

constexpr double kSeriesRadius = 0.5;

std::span<const double> q_coefficients(int k) {
  switch (k) {
    case 0: return kQ0;
    case 1: return kQ1;
    case 2: return kQ2;
    case 3: return kQ3;
    default: throw DomainError("uniform expansion coefficients exist only for k <= 3");
  }
}

double horner(std::span<const double> coeffs, double x) {
  double acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

double ExpansionTables::tricomi_b(int k, double x) {
  const double d = 1.0 - x;
  switch (k) {
    case 0: return 1.0 / d;
    case 1: return -1.0 / (d * d * d);
    case 2: return (x + 2.0) / (d * d * d * d * d);
    default: throw DomainError("Tricomi coefficients exist only for k <= 2");
  }
}

std::span<const double> ExpansionTables::temme_a(int k) {
  if (k < 0 || k >= kMaxTerms) throw DomainError("q_k is tabulated for k <= 2");
  return q_coefficients(k);
}

double ExpansionTables::temme_q(int k, double xi) {
  if (k < 0 || k >= kMaxTerms) throw DomainError("q_k is tabulated for k <= 2");
  return horner(q_coefficients(k), xi);
}

double ExpansionTables::normal_tail_a(int k) {
  if (k < 0) throw DomainError("A_k requires k >= 0");
  double v = 1;
  for (int j = 1; j <= k; ++j) v *= 2 * j - 1;
  return v;
}

double temme_coefficient(int k, double eta_value, double xi) {
  if (k < 0 || k > 3) throw DomainError("c_k is available for k <= 3");
  if (std::fabs(eta_value) < kSeriesRadius) return horner(kCSeries[k], eta_value);
  const int m = 2 * k + 1;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const double a_k = ExpansionTables::normal_tail_a(k);
  return sign * (horner(q_coefficients(k), xi) / std::pow(xi, m) - a_k / std::pow(eta_value, m));
}

}  // namespace knsaw
