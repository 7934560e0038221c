// Generated by tools/gen_theta. Backward-error thresholds theta_m for the
// truncated-Taylor exponential action, m = 1..55.

#include "theta_tables.hpp"

namespace qsw::detail {

const std::array<double, 55> kThetaTaylorDouble = {
    2.22044604925031283e-16,
    2.58095680297176700e-08,
    1.38634786611912134e-05,
    3.39716883997696168e-04,
    2.40087635788727421e-03,
    9.06565640759510183e-03,
    2.38445553250027364e-02,
    4.99122887111532257e-02,
    8.95776020322334304e-02,
    1.44182976161437798e-01,
    2.14235806845171073e-01,
    2.99615891381158073e-01,
    3.99777533631679505e-01,
    5.13914693612429363e-01,
    6.41083523304119884e-01,
    7.80287425662657408e-01,
    9.30532846078656828e-01,
    1.09086371929003612e+00,
    1.26038106064263866e+00,
    1.43825259680433692e+00,
    1.62371595023582138e+00,
    1.81607781621508568e+00,
    2.01471078094461609e+00,
    2.21904886936508960e+00,
    2.42858252444282652e+00,
    2.64285345745943534e+00,
    2.86144963393426410e+00,
    3.08400054498916187e+00,
    3.31017283989027078e+00,
    3.53966634874368946e+00,
    3.77221049568175104e+00,
    4.00756108611803974e+00,
    4.24549744257969586e+00,
    4.48581985944736861e+00,
    4.72834734579353899e+00,
    4.97291562619198135e+00,
    5.21937537108405802e+00,
    5.46759063052454408e+00,
    5.71743744757201267e+00,
    5.96880263004184908e+00,
    6.22158266168989105e+00,
    6.47568273607998446e+00,
    6.73101589838102399e+00,
    6.98750228213063007e+00,
    7.24506842959795083e+00,
    7.50364668578886373e+00,
    7.76317465737798695e+00,
    8.02359472893997960e+00,
    8.28485362980391749e+00,
    8.54690204568493250e+00,
    8.80969426997132210e+00,
    9.07318789017614513e+00,
    9.33734350561201332e+00,
    9.60212447282655646e+00,
    9.86749667575340084e+00,
};

const std::array<double, 55> kThetaTaylorSingle = {
    1.19209280076878764e-07,
    5.97885889380523369e-04,
    1.12338647352867079e-02,
    5.11661936344508586e-02,
    1.30848716459947029e-01,
    2.49528932284669769e-01,
    4.01458242351048045e-01,
    5.80052462768876786e-01,
    7.79511337435803142e-01,
    9.95184079000445698e-01,
    1.22347954242414270e+00,
    1.46166150720903354e+00,
    1.70764852960870117e+00,
    1.95985058595989803e+00,
    2.21704439497472050e+00,
    2.47828087752197135e+00,
    2.74281711269877970e+00,
    3.01006636281763429e+00,
    3.27956121263599698e+00,
    3.55092621470649528e+00,
    3.82385742545096585e+00,
    4.09810697219150644e+00,
    4.37347131184050042e+00,
    4.64978222410075759e+00,
    4.92689984375591106e+00,
    5.20470722801236008e+00,
    5.48310608765863439e+00,
    5.76201340844776944e+00,
    6.04135875819257073e+00,
    6.32108212630196142e+00,
    6.60113217950116216e+00,
    6.88146484520971846e+00,
    7.16204215448775994e+00,
    7.44283129193659754e+00,
    7.72380381155399132e+00,
    8.00493498643628598e+00,
    8.28620326700216481e+00,
    8.56758982766257660e+00,
    8.84907818592395046e+00,
    9.13065388109010101e+00,
    9.41230420221941699e+00,
    9.69401795696301605e+00,
    9.97578527447068453e+00,
    1.02575974367975036e+01,
    1.05394467342421869e+01,
    1.08213263408521776e+01,
    1.11032302069807116e+01,
    1.13851529663091657e+01,
    1.16670898551788316e+01,
    1.19490366424289984e+01,
    1.22309895682281589e+01,
    1.25129452906244527e+01,
    1.27949008387394869e+01,
    1.30768535716942615e+01,
    1.33588011424930873e+01,
};

}  // namespace qsw::detail
