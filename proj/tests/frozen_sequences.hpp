// Generated by tests/oracle/lte_sequences.py. Do not edit.
#pragma once

#include <array>
#include <complex>

namespace frozen {

inline const std::array<std::complex<double>, 62> kPssRoot25 = {{
    {1, 0},
    {-0.7971325072229225, -0.60380441032547738},
    {0.36534102436639498, -0.93087374864420425},
    {-0.73305187182982634, -0.68017273777091936},
    {0.98017248784854416, 0.19814614319939583},
    {0.95557280578614312, 0.29475517441089655},
    {-0.49999999999999617, -0.86602540378444082},
    {0.76604444311897568, -0.64278760968654203},
    {-0.22252093395631101, -0.9749279121818244},
    {0.6234898018587246, 0.78183148246803702},
    {0.45621065735317012, 0.88987180881146488},
    {0.36534102436639659, -0.93087374864420369},
    {0.95557280578614545, 0.29475517441088883},
    {0.76604444311897513, -0.6427876096865428},
    {-0.49999999999995753, 0.86602540378446313},
    {-0.73305187182982134, 0.68017273777092468},
    {0.9801724878485425, 0.19814614319940435},
    {-0.22252093395630812, 0.97492791218182506},
    {0.62348980185868164, 0.78183148246807121},
    {-0.79713250722292373, -0.60380441032547572},
    {-0.50000000000008493, -0.86602540378438964},
    {-0.50000000000000511, 0.86602540378443571},
    {-0.79713250722287288, -0.60380441032554288},
    {-0.9888308262251142, 0.1490422661762697},
    {0.95557280578615211, -0.29475517441086729},
    {0.98017248784853739, 0.19814614319942933},
    {-0.22252093395631578, -0.97492791218182329},
    {1, -6.2736579031993431e-14},
    {0.7660444431189537, -0.64278760968656834},
    {-0.73305187182987608, 0.68017273777086584},
    {-0.98883082622511798, 0.14904226617624453},
    {-0.98883082622513052, 0.14904226617616118},
    {-0.733051871829836, 0.68017273777090892},
    {0.76604444311897002, -0.6427876096865488},
    {1, -6.6665352479450371e-14},
    {-0.22252093395623745, -0.97492791218184116},
    {0.98017248784850486, 0.1981461431995907},
    {0.95557280578615844, -0.2947551744108467},
    {-0.98883082622511298, 0.14904226617627747},
    {-0.79713250722296403, -0.60380441032542254},
    {-0.49999999999975042, 0.8660254037845827},
    {-0.50000000000006961, -0.86602540378439841},
    {-0.79713250722299944, -0.60380441032537568},
    {0.62348980185871383, 0.78183148246804546},
    {-0.22252093395623929, 0.97492791218184072},
    {0.98017248784853972, 0.19814614319941776},
    {-0.7330518718297333, 0.68017273777101961},
    {-0.50000000000031231, 0.8660254037842583},
    {0.76604444311907338, -0.64278760968642579},
    {0.95557280578623471, 0.2947551744105994},
    {0.36534102436627247, -0.93087374864425232},
    {0.45621065735334027, 0.88987180881137773},
    {0.62348980185878589, 0.78183148246798806},
    {-0.22252093395649927, -0.97492791218178143},
    {0.76604444311890574, -0.64278760968662541},
    {-0.50000000000025124, -0.8660254037842936},
    {0.95557280578635373, 0.29475517441021354},
    {0.98017248784837274, 0.19814614320024387},
    {-0.73305187182926146, -0.6801727377715282},
    {0.36534102436647681, -0.93087374864417216},
    {-0.79713250722264795, -0.60380441032583976},
    {1, 1.1166055293422872e-13},
}};

inline const std::array<int, 62> kSss_0_0_0 = {
    1, 1, 1, -1, 1, 1, 1, 1, 1, -1, 1, 1, -1, -1, -1, -1, -1, -1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, -1, -1, -1, -1, -1, -1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1, -1, 1, 1, -1, 1, 1, 1, 1, -1, 1, -1, -1, -1, 1, 1, 1, 1, -1};
inline const std::array<int, 62> kSss_0_0_5 = {
    1, 1, 1, -1, 1, 1, -1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, -1, 1, -1, -1, 1, 1, -1, 1, -1, 1, 1, -1, -1, -1, -1, -1, 1, -1, -1, -1, -1, -1, 1, 1, 1, 1, -1, 1, 1, -1, 1, 1, -1, 1, -1, 1, 1, 1, -1, 1, 1, -1, -1, -1, -1};
inline const std::array<int, 62> kSss_12_1_0 = {
    1, -1, -1, 1, -1, -1, 1, -1, -1, 1, 1, 1, 1, 1, -1, 1, -1, -1, 1, -1, -1, -1, -1, 1, 1, 1, -1, 1, -1, 1, 1, 1, 1, -1, -1, 1, 1, -1, -1, 1, -1, -1, 1, 1, 1, -1, 1, 1, -1, 1, 1, 1, 1, 1, 1, -1, -1, -1, 1, 1, 1, 1};
inline const std::array<int, 62> kSss_167_2_5 = {
    -1, 1, -1, -1, -1, -1, 1, 1, 1, 1, -1, -1, 1, 1, 1, 1, 1, -1, 1, -1, -1, 1, -1, 1, -1, -1, -1, -1, 1, -1, 1, -1, 1, -1, 1, -1, -1, 1, 1, 1, 1, 1, -1, -1, -1, 1, -1, -1, 1, 1, -1, -1, -1, 1, 1, 1, -1, 1, -1, -1, 1, -1};

// pci 37, slot 0, symbol 0, 6 resource blocks
inline const std::array<int, 12> kCrs37Subcarriers = {1, 7, 13, 19, 25, 31, 37, 43, 49, 55, 61, 67};
inline const std::array<std::complex<double>, 12> kCrs37Values = {{
    {0.70710678118654746, 0.70710678118654746},
    {0.70710678118654746, -0.70710678118654746},
    {-0.70710678118654746, 0.70710678118654746},
    {0.70710678118654746, -0.70710678118654746},
    {-0.70710678118654746, 0.70710678118654746},
    {-0.70710678118654746, -0.70710678118654746},
    {-0.70710678118654746, -0.70710678118654746},
    {0.70710678118654746, 0.70710678118654746},
    {-0.70710678118654746, -0.70710678118654746},
    {-0.70710678118654746, 0.70710678118654746},
    {0.70710678118654746, -0.70710678118654746},
    {0.70710678118654746, -0.70710678118654746},
}};

}  // namespace frozen
