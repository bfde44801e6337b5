"""Forms shared by several test modules."""

from hypmin.forms import parse_form

DNS_SEXTIC = parse_form(
    "5*x^6 - 50*x^5*y + 206*x^4*y^2 - 408*x^3*y^3 + 321*x^2*y^4 + 10*x*y^5"
    " - 100*y^6 + 9*x^4*z^2 - 60*x^3*y*z^2 + 80*x^2*y^2*z^2"
    " + 48*x*y^3*z^2 + 15*y^4*z^2 + 3*x^2*z^4 - 10*x*y*z^4 + 6*y^2*z^4 - z^6"
)

DNS_MINIMIZED = parse_form(
    "-x^6 - 2*x^5*y + 2*x^5*z + 23*x^4*y*z - 5*x^3*y^3 - x^3*y^2*z"
    " + x^3*y*z^2 + 5*x^3*z^3 - x^2*y^4 - 8*x^2*y^3*z"
    " + 17*x^2*y^2*z^2 - 8*x^2*y*z^3 - x^2*z^4 + 3*x*y^5 - 7*x*y^4*z"
    " + 10*x*y^3*z^2 - 10*x*y^2*z^3 + 7*x*y*z^4"
    " - 3*x*z^5 + y^6 - 3*y^5*z + 3*y^4*z^2 - 6*y^3*z^3 + 3*y^2*z^4 - 3*y*z^5 + z^6"
)

DNS_MATRIX = ((1, 1, 0), (-1, 0, 1), (1, 0, 1))

DEGREE10 = parse_form(
    "7*x^10 + 4*x^9*y - 9*x^9*z - x^8*y^2 + 9*x^8*y*z - 5*x^8*z^2 - 4*x^7*y^3"
    " - 8*x^7*y^2*z - 7*x^7*y*z^2 - 9*x^7*z^3"
    " - 3*x^6*y^4 - 5*x^6*y^3*z + 2*x^6*y^2*z^2 - 7*x^6*y*z^3 + 4*x^6*z^4"
    " + 8*x^5*y^5 + 10*x^5*y^4*z + 5*x^5*y^3*z^2"
    " - 3*x^5*y^2*z^3 + 2*x^5*y*z^4 - x^4*y^6 + 9*x^4*y^5*z"
    " - 3*x^4*y^4*z^2 + 5*x^4*y^3*z^3 + x^4*y*z^5 - 2*x^4*z^6"
    " + 6*x^3*y^7 + 8*x^3*y^6*z + 9*x^3*y^4*z^3 + 9*x^3*y^3*z^4 + 5*x^3*y^2*z^5"
    " - 5*x^3*y*z^6 + 3*x^3*z^7 - 10*x^2*y^8"
    " + 8*x^2*y^6*z^2 - 5*x^2*y^5*z^3 + 8*x^2*y^4*z^4 - 10*x^2*y^3*z^5 - 5*x^2*y^2*z^6"
    " - x^2*z^8 - 3*x*y^9 + 8*x*y^8*z"
    " - 10*x*y^7*z^2 + 7*x*y^6*z^3 + 4*x*y^5*z^4 - 9*x*y^4*z^5 + x*y^3*z^6"
    " - 4*x*y^2*z^7 - 9*x*y*z^8 - 2*x*z^9 - 9*y^10"
    " - 7*y^9*z + 5*y^8*z^2 - 7*y^7*z^3 + 2*y^6*z^4 - 2*y^5*z^5 + 3*y^4*z^6"
    " - 2*y^3*z^7 + 2*y^2*z^8 + 8*y*z^9 + 5*z^10"
)

DEGREE10_MATRIX = (
    (-6822460139, -8617905122, 4801170083),
    (5588128275, 3128463726, 3491404315),
    (-3274111511, 371050596, 2931443838),
)

S0_SURFACE = parse_form(
    "-866812507957452012700721792086587937*x^3"
    " + 3728812982147606773738081898305547310*x^2*y"
    " + 64283763770985952786436023327908284160*x^2*z"
    " + 497718355086466637590632151750449246396*x^2*w"
    " - 22244579889188354084172896622822533100*x*y^2"
    " - 431923319964698868982551682351317273600*x*y*z"
    " - 2446192338737080630831681553231971375920*x*y*w"
    " - 1618017788538827453488905618589376819200*x*z^2"
    " + 15747155527321974660280650027255501486080*x*z*w"
    " - 66025203088832123300929566152845689479856*x*w^2"
    " - 65456138728936479908688098323552023000*y^3"
    " - 357488525368202205779029272883004032000*y^2*z"
    " + 20762944510278587277812066653228558975600*y^2*w"
    " + 20013727944438057575668128606471875584000*y*z^2"
    " + 64721500464867439337111893187712691097600*y*z*w"
    " - 351425459041632833836477745377146122692640*y*w^2"
    " + 5759206855635558085134656966457081856000*z^3"
    " - 406645509553946606042771346800156046540800*z^2*w"
    " - 3284853297122243046122373374040607648010240*z*w^2"
    " - 2681060506817531405431579495959221739841728*w^3"
)

S0_PRIMES = (2, 3, 5, 7, 13, 113, 463, 733, 2141, 9643, 14143, 17278361, 22436341)
S0_BAD_AFTER = (2, 3, 5, 7, 13, 733, 22436341)

S0_REDUCED = parse_form(
    "2*x^3 + 16*x^2*z - 12*x^2*w - 17*x*y^2 + 61*x*y*z - 26*x*y*w"
    " - 20*x*z^2 + 95*x*z*w + 18*x*w^2 + 5*y^3 + 33*y^2*z + 10*y^2*w"
    " - 25*y*z*w - 22*y*w^2 - 11*z^3 - 21*z^2*w + 50*z*w^2 - 52*w^3"
)
