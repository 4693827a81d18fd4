#include "bibx/countries.hpp"

#include <sstream>

#include "bibx/error.hpp"
#include "bibx/strings.hpp"

namespace bibx::geo {
namespace {

// name,iso2,lat,lon,aliases
constexpr std::string_view kBuiltin = R"(afghanistan,AF,33.9,67.7
albania,AL,41.2,20.2
algeria,DZ,28.0,1.7
andorra,AD,42.5,1.6
angola,AO,-11.2,17.9
antigua and barbuda,AG,17.1,-61.8
argentina,AR,-38.4,-63.6
armenia,AM,40.1,45.0
australia,AU,-25.3,133.8
austria,AT,47.5,14.6
azerbaijan,AZ,40.1,47.6
bahamas,BS,25.0,-77.4,the bahamas
bahrain,BH,26.0,50.6
bangladesh,BD,23.7,90.4
barbados,BB,13.2,-59.5
belarus,BY,53.7,28.0
belgium,BE,50.5,4.5
belize,BZ,17.2,-88.5
benin,BJ,9.3,2.3
bhutan,BT,27.5,90.4
bolivia,BO,-16.3,-63.6
bosnia and herzegovina,BA,43.9,17.7,bosnia & herzegovina;bosnia-herzegovina
botswana,BW,-22.3,24.7
brazil,BR,-14.2,-51.9,brasil
brunei,BN,4.5,114.7,brunei darussalam
bulgaria,BG,42.7,25.5
burkina faso,BF,12.2,-1.6
burundi,BI,-3.4,29.9
cambodia,KH,12.6,105.0
cameroon,CM,7.4,12.4
canada,CA,56.1,-106.3
cape verde,CV,16.0,-24.0,cabo verde
central african republic,CF,6.6,20.9
chad,TD,15.5,18.7
chile,CL,-35.7,-71.5
china,CN,35.9,104.2,peoples r china;people's republic of china;p.r. china;pr china;p. r. china;prc
colombia,CO,4.6,-74.3
comoros,KM,-11.9,43.9
congo,CG,-0.2,15.8,republic of the congo;congo republic
costa rica,CR,9.7,-83.8
cote d'ivoire,CI,7.5,-5.5,ivory coast;cote divoire
croatia,HR,45.1,15.2
cuba,CU,21.5,-77.8
cyprus,CY,35.1,33.4
czech republic,CZ,49.8,15.5,czechia
democratic republic of the congo,CD,-4.0,21.8,dem rep congo;dr congo;drc;congo (kinshasa)
denmark,DK,56.3,9.5
djibouti,DJ,11.8,42.6
dominica,DM,15.4,-61.4
dominican republic,DO,18.7,-70.2
ecuador,EC,-1.8,-78.2
egypt,EG,26.8,30.8
el salvador,SV,13.8,-88.9
equatorial guinea,GQ,1.7,10.3
eritrea,ER,15.2,39.8
estonia,EE,58.6,25.0
eswatini,SZ,-26.5,31.5,swaziland
ethiopia,ET,9.1,40.5
fiji,FJ,-17.7,178.1
finland,FI,61.9,25.7
france,FR,46.2,2.2
gabon,GA,-0.8,11.6
gambia,GM,13.4,-15.3,the gambia
georgia,GE,42.3,43.4
germany,DE,51.2,10.5,deutschland;federal republic of germany
ghana,GH,7.9,-1.0
greece,GR,39.1,21.8
grenada,GD,12.1,-61.7
guatemala,GT,15.8,-90.2
guinea,GN,9.9,-9.7
guinea-bissau,GW,11.8,-15.2
guyana,GY,4.9,-58.9
haiti,HT,19.0,-72.3
honduras,HN,15.2,-86.2
hong kong,HK,22.3,114.2,hong kong sar
hungary,HU,47.2,19.5
iceland,IS,64.9,-19.0
india,IN,20.6,79.0
indonesia,ID,-0.8,113.9
iran,IR,32.4,53.7,islamic republic of iran;iran (islamic republic of)
iraq,IQ,33.2,43.7
ireland,IE,53.4,-8.2,republic of ireland;eire
israel,IL,31.0,34.9
italy,IT,41.9,12.6,italia
jamaica,JM,18.1,-77.3
japan,JP,36.2,138.3
jordan,JO,30.6,36.2
kazakhstan,KZ,48.0,66.9
kenya,KE,-0.0,37.9
kiribati,KI,1.9,-157.4
kosovo,XK,42.6,20.9
kuwait,KW,29.3,47.5
kyrgyzstan,KG,41.2,74.8
laos,LA,19.9,102.5,lao pdr;lao people's democratic republic
latvia,LV,56.9,24.6
lebanon,LB,33.9,35.9
lesotho,LS,-29.6,28.2
liberia,LR,6.4,-9.4
libya,LY,26.3,17.2
liechtenstein,LI,47.2,9.6
lithuania,LT,55.2,23.9
luxembourg,LU,49.8,6.1
macao,MO,22.2,113.5,macau
madagascar,MG,-18.8,46.9
malawi,MW,-13.3,34.3
malaysia,MY,4.2,102.0
maldives,MV,3.2,73.2
mali,ML,17.6,-4.0
malta,MT,35.9,14.4
marshall islands,MH,7.1,171.2
mauritania,MR,21.0,-10.9
mauritius,MU,-20.3,57.6
mexico,MX,23.6,-102.6
micronesia,FM,7.4,150.6
moldova,MD,47.4,28.4,republic of moldova
monaco,MC,43.7,7.4
mongolia,MN,46.9,103.8
montenegro,ME,42.7,19.4
morocco,MA,31.8,-7.1
mozambique,MZ,-18.7,35.5
myanmar,MM,21.9,95.9,burma
namibia,NA,-22.9,18.5
nauru,NR,-0.5,166.9
nepal,NP,28.4,84.1
netherlands,NL,52.1,5.3,the netherlands;holland
new zealand,NZ,-40.9,174.9
nicaragua,NI,12.9,-85.2
niger,NE,17.6,8.1
nigeria,NG,9.1,8.7
north korea,KP,40.3,127.5,dem peoples r korea;democratic people's republic of korea
north macedonia,MK,41.6,21.7,macedonia;republic of north macedonia
norway,NO,60.5,8.5
oman,OM,21.5,55.9
pakistan,PK,30.4,69.3
palau,PW,7.5,134.6
palestine,PS,31.9,35.2,state of palestine
panama,PA,8.5,-80.8
papua new guinea,PG,-6.3,143.9
paraguay,PY,-23.4,-58.4
peru,PE,-9.2,-75.0
philippines,PH,12.9,121.8
poland,PL,51.9,19.1
portugal,PT,39.4,-8.2
puerto rico,PR,18.2,-66.6
qatar,QA,25.4,51.2
romania,RO,45.9,25.0
russia,RU,61.5,105.3,russian federation
rwanda,RW,-1.9,29.9
saint kitts and nevis,KN,17.4,-62.8
saint lucia,LC,13.9,-61.0
saint vincent and the grenadines,VC,12.98,-61.3
samoa,WS,-13.8,-172.1
san marino,SM,43.9,12.5
sao tome and principe,ST,0.2,6.6
saudi arabia,SA,23.9,45.1
senegal,SN,14.5,-14.5
serbia,RS,44.0,21.0
seychelles,SC,-4.7,55.5
sierra leone,SL,8.5,-11.8
singapore,SG,1.4,103.8
slovakia,SK,48.7,19.7,slovak republic
slovenia,SI,46.2,15.0
solomon islands,SB,-9.6,160.2
somalia,SO,5.2,46.2
south africa,ZA,-30.6,22.9
south korea,KR,35.9,127.8,korea;republic of korea;korea (the republic of);korea republic
south sudan,SS,6.9,31.3
spain,ES,40.5,-3.7,espana
sri lanka,LK,7.9,80.8
sudan,SD,12.9,30.2
suriname,SR,3.9,-56.0
sweden,SE,60.1,18.6
switzerland,CH,46.8,8.2
syria,SY,34.8,39.0,syrian arab republic
taiwan,TW,23.7,121.0,republic of china;taiwan roc;chinese taipei
tajikistan,TJ,38.9,71.3
tanzania,TZ,-6.4,34.9,united republic of tanzania
thailand,TH,15.9,101.0
timor-leste,TL,-8.9,125.7,east timor
togo,TG,8.6,0.8
tonga,TO,-21.2,-175.2
trinidad and tobago,TT,10.7,-61.2,trinidad & tobago
tunisia,TN,33.9,9.5
turkey,TR,39.0,35.2,turkiye
turkmenistan,TM,39.0,59.6
tuvalu,TV,-7.1,177.6
uganda,UG,1.4,32.3
ukraine,UA,48.4,31.2
united arab emirates,AE,23.4,53.8,uae;u arab emirates
united kingdom,GB,55.4,-3.4,uk;england;scotland;wales;northern ireland;great britain;u.k.
united states,US,37.1,-95.7,usa;u.s.a.;united states of america;us;u.s.
uruguay,UY,-32.5,-55.8
uzbekistan,UZ,41.4,64.6
vanuatu,VU,-15.4,166.9
vatican city,VA,41.9,12.5,holy see
venezuela,VE,6.4,-66.6
vietnam,VN,14.1,108.3,viet nam
yemen,YE,15.6,48.5
zambia,ZM,-13.1,27.8
zimbabwe,ZW,-19.0,29.2
greenland,GL,71.7,-42.6
new caledonia,NC,-20.9,165.6
french polynesia,PF,-17.7,-149.4
reunion,RE,-21.1,55.5
guadeloupe,GP,16.3,-61.6
martinique,MQ,14.6,-61.0
french guiana,GF,3.9,-53.1
faroe islands,FO,61.9,-6.9
gibraltar,GI,36.1,-5.4
bermuda,BM,32.3,-64.8
cayman islands,KY,19.3,-81.3
curacao,CW,12.2,-69.0
aruba,AW,12.5,-70.0
guam,GU,13.4,144.8
western sahara,EH,24.2,-12.9
)";

std::vector<std::string> split(std::string_view s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == delim) {
      out.push_back(str::trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::string lookup_key(std::string_view s) {
  std::string t = str::to_lower(str::collapse_ws(str::fold_diacritics(s)));
  while (!t.empty() && (t.back() == '.' || t.back() == ';' || t.back() == ',')) t.pop_back();
  return t;
}

}  // namespace

void CountryTable::add(Country c, const std::vector<std::string>& aliases) {
  const std::size_t idx = countries_.size();
  index_.emplace(lookup_key(c.name), idx);
  for (const auto& a : aliases) {
    if (!a.empty()) index_.emplace(lookup_key(a), idx);
  }
  countries_.push_back(std::move(c));
}

CountryTable CountryTable::from_csv(std::string_view text) {
  CountryTable table;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = str::trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split(line, ',');
    if (cols.size() < 4) throw ParseError(line_no, "country row needs name,iso2,lat,lon", "line");
    Country c;
    c.name = lookup_key(cols[0]);
    c.iso2 = str::to_upper(cols[1]);
    try {
      c.lat = std::stod(cols[2]);
      c.lon = std::stod(cols[3]);
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad coordinate", "line");
    }
    std::vector<std::string> aliases;
    if (cols.size() > 4) aliases = split(cols[4], ';');
    table.add(std::move(c), aliases);
  }
  return table;
}

const CountryTable& CountryTable::builtin() {
  static const CountryTable table = from_csv(kBuiltin);
  return table;
}

const Country* CountryTable::find(std::string_view name) const {
  const auto it = index_.find(lookup_key(name));
  return it == index_.end() ? nullptr : &countries_[it->second];
}

const Country* CountryTable::from_affiliation(std::string_view affiliation) const {
  std::string_view tail = affiliation;
  if (const auto comma = affiliation.rfind(','); comma != std::string_view::npos)
    tail = affiliation.substr(comma + 1);
  const std::string key = lookup_key(tail);
  if (key.empty()) return nullptr;
  if (const auto* c = find(key)) return c;
  // "Stanford, CA 94305 USA": try shorter trailing word runs.
  std::size_t pos = 0;
  while ((pos = key.find(' ', pos)) != std::string::npos) {
    ++pos;
    if (const auto* c = find(std::string_view(key).substr(pos))) return c;
  }
  return nullptr;
}

}  // namespace bibx::geo
