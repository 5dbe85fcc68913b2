// Copyright 2026 The motskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Frozen RLE fixture strings. Each entry was produced by the standalone
// reference encoder (tests/reference/reference_rle.hpp) run against the
// deterministic mask generator in test_util.hpp, then cross-checked
// against an existing third-party encoder for the same format. Treat the
// strings as recorded ground truth: regenerating them hides codec bugs.

#ifndef MOTSKIT_TESTS_RLE_FIXTURES_HPP_
#define MOTSKIT_TESTS_RLE_FIXTURES_HPP_

namespace fixtures {

struct RleCase {
  const char* name;
  int height;
  int width;
  // seed/density describe the generated mask; handmade cases use seed 0
  // and density -1 and are rebuilt by the tests directly.
  unsigned long long seed;
  int density;
  const char* counts;
};

inline constexpr RleCase kRleCases[] = {
    {"A_3x3_center", 3, 3, 0ULL, -1, R"(414)"},
    {"B_2x2_empty", 2, 2, 0ULL, -1, R"(4)"},
    {"C_2x2_full", 2, 2, 0ULL, -1, R"(04)"},
    {"D_16x16", 16, 16, 7ULL, 50, R"(1120O1021NOO11OO011OO0001010N111O02NN20N0011O30L11O11N31L00O20N10O21O1ON000120NO001112OMO01041KO2130KO11OO31M012OO2N06NJ31NOO22NN0014OO2)"},
    {"E_64x64", 64, 64, 42ULL, 30, R"(02101OO020N052LNO23ON00O30L0010O013OM0101021O3NL0040L000O020O00071JON10O2040J2120L000001OO11OO015ON0N0O00120NO30M071M0MOO011OO12000N1000N020N01040M0O1OO60M1N2OM50K030N12OO16O50E0043LL030L10O010O113O30J010N0000011O03OO0N0000010O0000011OO10000100OO011O0030M02080K0J010O01130OO01M05OK010O020O031LO11OO21N04ON00010M000001010N02011OO70G01010N01011NO211O41NOM02070G0O03130LOO010M00060O0N0N0O30N2ON00060L2ONO32N60H02O40J18OI140LOO0510O000100NO51MOO1LO3100MO1110OO000120MO90G03020N020N1MO2050J0O061KO50K01000O001110N;1JOJ04000M3N10L30O11O30K0100060J00010M15ON2MO3OM10O0020O0O010000050K02010L02050I10O110O40K00084NNKN:0E061JO0031MO011O20210O00K20N40M41LO020010O0000N23N`00\O00063JN4OL0060K4OL050M14OL1OO>0E022LN30L01030L0O02012NN00O10O:1FO22NN003000O0N0=0E0N030M010O10O0090H15OK041K03ON21N31NOM180H110ON1010O0O010O0043LM20N013ON0O050K040O1MO51KO21NO0050N0M0301010L010O1O13N11L01O220NM3204MO0M0O010N010O020O01030O0M0O1211NN002OO00011N20M001016OLOO01010M090K0M041LOO0001020N0O040L02001NO0040M0O021NO00?1A05OM030N12OM19OG000O15OM0M00030M13O20M0N25NK000000000>1HOK22N40M0M021NO10N180HO10O000000011OO0060K22NN0110ON0211O:0E000O01000O0O10O1071J0OO40L010O3OM0170IO0020O03000`00_O0M020O0;0D1001O00013ON012NNO051MO20L0103000N3OMO000214OK02002NNO22O21NNN030;0B0001051O0L01OO0001030K0002030K020N00010022OOO30K16OJ030:2C05NO0M11ON043LM13:MG0N071IO0080I020N041MOO0O0000260JN30O150N1LNO26NK30M20N0O060K030N0O0811OI11OL20N110O30N040L022L00N70J10O112O21N2MN016NK23NL031M15N10I000;0H0M050K02010O0O0014OK12ON25OOOL0;0F0O01120OO01NO4031JO0040L20N01001ON020N1000O022NN13O:0C21O00OO62MNM13O00N071LOO0O0N13OM10O50L030L011OO0012ON50K060L060I000O21N00O010O12OO0O030O001OOO0110O00O020O10OO0000020N30O3N10M0O0122N01MO40L040L1103O20J000522NN2NN42LNN0O040;0D1OO10M0012O30M0N0040L11)"},
    {"F_25x40", 25, 40, 3ULL, 70, R"(072KOO000253KK000202040I0O21OOO40L081KOM12O10M0000050O0M21N30L0230NNO10N080I21N30K00060L0O051KOO0:0G0001051JO0060O0L0N12O00N24NL1>0B02O00O000113OM0N030O030K010115OI11O00O01110O0OO0031MO0000110150JN4050H0O000010023NL023N60G050M2O0ON0130OOO2ON1010N10O80H11O0000O040O002MO4OM00010O0O000110O20M040M00050N011MO30O2MNO00031MO50K050K10O3000N200OO20OO;0E15OL0O0O111:NG040J0100000O162M01ML00041OOM030O04020I010O1O0302O10K14OL0O000101000105)"},
    {"G_64x1", 64, 1, 11ULL, 50, R"(029OH00000060K0O81H22NOOO010O2)"},
    {"H_1x64", 1, 64, 13ULL, 50, R"(11142NNN24NL50K0001001O03OM00022NN)"},
    {"I_3x4_toprow", 3, 4, 0ULL, -1, R"(012000000)"},
};

}  // namespace fixtures

#endif  // MOTSKIT_TESTS_RLE_FIXTURES_HPP_
