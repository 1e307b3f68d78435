#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Test Fixtures
-------------
Operator and basis texts for the worked examples exercised by the test suite.
Recurrence operators are written in x and E, shift operators in k and S.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

from math import comb, factorial

BINOMIAL = "binomial(1,0)"
BINOMIAL_SQUARED = "product(binomial(1,0),binomial(1,0))"
BINOMIAL_CUBED = "product(binomial(1,0),binomial(1,0),binomial(1,0))"
APERY2_BASIS = "shuffle([genbinom(1,0,0,1), genbinom(1,1,0,2)], [2,1,2])"
APERY3_BASIS = "product(genbinom(1,1,0,2),genbinom(1,1,0,2))"

# (L, associated operator over binomial(1,0)) pairs
SUBSTITUTIONS = [
    ("E - 3", "S - 2"),
    ("E^2 - 2*E + 1", "S^2"),
    ("E^2 - E - 1", "S^2 + S - 1"),
    ("E - (x+1)", "S - k - k*S^-1"),
    (
        "E^3 - (x^2+6*x+10)*E^2 + (x+2)*(2*x+5)*E - (x+1)*(x+2)",
        "S^3 - (k^2+6*k+7)*S^2 - (2*k^2+8*k+7)*S - (k+1)^2",
    ),
]

# Order-7 operator with two interlaced definite-sum solutions
ORDER7 = (
    "(x+8)*(27034107689*x+247037440535)*E^7"
    " - 2*(x+7)*(27034107689*x^2+707256640479*x+3519513987204)*E^6"
    " + (27034107689*x^4+1763504948043*x^3+29534526868562*x^2+187161930754966*x+404930820118700)*E^5"
    " - 4*(121973169216*x^4+3928755304511*x^3+43197821249228*x^2+198945697078905*x+329021406797184)*E^4"
    " + (2167208392754*x^4+45326791213914*x^3+347739537911929*x^2+1165212776491303*x+1439937061155596)*E^3"
    " - 2*(613023852648*x^4+8954947813901*x^3+52565810509778*x^2+141274453841469*x+142893654078876)*E^2"
    " - (x+2)^2*(1109455476579*x^2+3624719391913*x-357803625948)*E"
    " + 24*(x+1)^2*(x+2)*(8996538731*x+29816968829)"
)

ORDER7_E = [["S + 1", "(2*k+1)/(k+1)"], ["2*S", "(k+1)/(k+2)*S + 1"]]
ORDER7_X = [["k", "k*S^-1"], ["k+1", "k"]]

ORDER7_L00 = (
    "(k+8)*(27034107689*k+247037440535)*S^7"
    " - (54068215378*k^9 - 315669611138*k^8 - 45148617745347*k^7 - 782696842132919*k^6"
    " - 6454240392445055*k^5 - 30050534179653883*k^4 - 82215116461457480*k^3"
    " - 129113197043173300*k^2 - 105757314240946896*k - 34247146225582080)"
    "/((k+1)*(k+2)*(k+3)*(k+4)*(k+5)*(k+6))*S^6"
    " + (27034107689*k^9 - 3508146051312*k^8 - 127964289486598*k^7 - 1741174847222631*k^6"
    " - 12524498803569684*k^5 - 53047967564919031*k^4 - 136503346354387959*k^3"
    " - 209045777928727562*k^2 - 173958661328786224*k - 59682736706956320)"
    "/((k+1)*(k+2)*(k+3)*(k+4)*(k+5))*S^5"
    " + (1972211122835*k^8 + 62134267567378*k^7 + 616718084410852*k^6 + 2619141590805683*k^5"
    " + 4315508250526315*k^4 - 1167669149632785*k^3 - 9620009176334670*k^2"
    " - 4014526382135216*k + 3400385599899936)/((k+1)*(k+2)*(k+3)*(k+4))*S^4"
    " - (2972566483581*k^7 - 148275885358425*k^6 - 2589937042152480*k^5 - 16499978058431541*k^4"
    " - 52671318556586357*k^3 - 88255097542772662*k^2 - 71905587088529204*k"
    " - 21524025761438520)/((k+1)*(k+2)*(k+3))*S^3"
    " - (64025119688979*k^6 + 916316298831859*k^5 + 5515823411381379*k^4 + 17451451407071553*k^3"
    " + 30016470047039710*k^2 + 26136807998134436*k + 8854550588334008)/((k+1)*(k+2))*S^2"
    " + 4*(12511390805301*k^5 + 48661327183573*k^4 - 74830042870409*k^3 - 512087325174801*k^2"
    " - 633098967293677*k - 198345093160056)/(k+1)*S"
    " + 4*(34604693659372*k^4 + 175550020109206*k^3 + 291507102636319*k^2 + 199874021738859*k"
    " + 49640119659704)"
    " + 8*k^2*(2263487310112*k^2 + 6642551248868*k + 2276852470297)*S^-1"
    " - 413236428752*(k-1)^2*k^2*S^-2"
)

ORDER7_L10 = (
    "(432545723024*k^8 + 17547024744793*k^7 + 300772935395324*k^6 + 2834950240712954*k^5"
    " + 16000429195865408*k^4 + 55071479995635089*k^3 + 112099510188633348*k^2"
    " + 122247182298335548*k + 53987648288898960)/((k+2)*(k+3)*(k+4)*(k+5)*(k+6)*(k+7))*S^7"
    " - (811023230670*k^8 + 24723393532810*k^7 + 292833072628835*k^6 + 1626762750499999*k^5"
    " + 3369314689609239*k^4 - 6528259273082053*k^3 - 46958468605880528*k^2"
    " - 85444980480836572*k - 52432761655513872)/((k+2)*(k+3)*(k+4)*(k+5)*(k+6))*S^6"
    " + (378477507646*k^8 + 3190665711589*k^7 - 176165113042889*k^6 - 3680820024183060*k^5"
    " - 30578022192058416*k^4 - 133391475526561039*k^3 - 319542866474066205*k^2"
    " - 394131699873504978*k - 193003564034906648)/((k+2)*(k+3)*(k+4)*(k+5))*S^5"
    " + (3985703076428*k^7 + 199767271665562*k^6 + 2926376432119304*k^5 + 20553495786751855*k^4"
    " + 79525367763859646*k^3 + 173129687209637083*k^2 + 197180830938857338*k"
    " + 90043789227857560)/((k+2)*(k+3)*(k+4))*S^4"
    " - (31542021389162*k^6 + 410370581149671*k^5 + 1889632865572464*k^4 + 2742859006263721*k^3"
    " - 4455809171785822*k^2 - 16973330513822344*k - 13162727503867212)/((k+2)*(k+3))*S^3"
    " - 4*(10843329249882*k^5 + 213871907378048*k^4 + 1533963953805732*k^3"
    " + 5087511194624529*k^2 + 7854660846698885*k + 4507808585185441)/(k+2)*S^2"
    " + 4*(34633098533762*k^4 + 268124598840421*k^3 + 719049847857749*k^2"
    " + 787188237460817*k + 289840947961864)*S"
    " + 8*(k+1)*(9073115013652*k^3 + 46580285333424*k^2 + 68719863652441*k + 31063488457919)"
    " + 192*k^2*(k+1)*(3095846506*k + 28683173885)*S^-1"
)

L1 = "E^2 - 2*(x+2)*E + (x+1)^2"
L2 = "(x+1)*(x+3)*E^2 - 3*(x+2)*(2*x+3)*E + (x+1)*(x+2)"

_P = "(-331-803*n-680*n^2-225*n^3-13*n^4+7*n^5+n^6)"
_Q = "(-2044-2849*n-1348*n^2-187*n^3+37*n^4+13*n^5+n^6)"
_R = "(-6377-5887*n-1542*n^2+111*n^3+117*n^4+19*n^5+n^6)"

# Factors as shift operators in n and E (read with the k/S aliases)
L3 = (
    f"24*(29816968829+8996538731*n)/{_P}"
    " + (-441648942295148-1125518881632823*n-1053315627513055*n^2-421766464222932*n^3"
    f"-59182885147037*n^4+6062805507491*n^5+2492693169923*n^6+186046100685*n^7)/({_P}*{_Q})*E"
    " - (-9439737938111061-12584340359048430*n-5882475183305081*n^2-948888850906974*n^3"
    f"+102412128495705*n^4+57283235096898*n^5+7386765251173*n^6+325688030730*n^7)/({_Q}*{_R})*E^2"
    f" + (247037440535+27034107689*n)/{_R}*E^3"
)
L4 = (
    "(5+n)*(-2-37*n-138*n^2-123*n^3-33*n^4+n^5+n^6)*E^4"
    " - (4+n)*(-276-1434*n-2946*n^2-2342*n^3-718*n^4-35*n^5+18*n^6+2*n^7)*E^3"
    " + (-6896-32704*n-60998*n^2-55528*n^3-26184*n^4-5888*n^5-239*n^6+144*n^7+24*n^8+n^9)*E^2"
    " - (2+n)^2*(-1686-6102*n-8388*n^2-5286*n^3-1430*n^4-44*n^5+47*n^6+6*n^7)*E"
    f" + (1+n)^2*(2+n)*{_P}"
)
L1_TILDE = (
    "(5+n)*(-2-37*n-138*n^2-123*n^3-33*n^4+n^5+n^6)*E^2"
    " - (4+n)*(-256-1060*n-1492*n^2-836*n^3-142*n^4+21*n^5+6*n^6)*E"
    f" + (2+n)*{_P}"
)
L2_TILDE = (
    "(-2-37*n-138*n^2-123*n^3-33*n^4+n^5+n^6)/(3+n)*E^2"
    " - (-393-1698*n-2727*n^2-1917*n^3-574*n^4-36*n^5+14*n^6+2*n^7)/(3+n)*E"
    f" + (1+n)*{_P}"
)

APERY2 = "(x+2)^2*E^2 - (11*x^2+33*x+25)*E - (x+1)^2"
APERY2_E = [
    ["S + 1", "(3*k+1)/(2*k+1)", "1"],
    ["(8*k+5)/(2*(k+1))*S", "(2*k+1)/(2*k+3)*S + 1", "(3*k+2)/(k+1)"],
    ["3/2*S", "(k+1)/(2*k+3)*S", "1"],
]
APERY2_X = [["k", "0", "2*k*S^-1"], ["2*k+1", "k", "0"], ["0", "k+1", "-(k+1)"]]
APERY2_COLUMN = [
    "(k+2)^2*S^2 + (29*k^3+46*k^2+14*k-1)/(2*k+1)*S - 2*(37*k^2+41*k+11)",
    "(k+2)*(4*k+5)*(12*k^2+26*k+11)/(2*(k+1)*(2*k+3))*S^2"
    " - (47*k^3+199*k^2+237*k+79)/(2*(k+1))*S - (2*k+1)*(49*k+31)",
    "(k+2)*(22*k^2+62*k+43)/(2*(2*k+3))*S^2 - 3/2*(11*k^2+34*k+25)*S - 11*(k+1)*(2*k+1)",
]
APERY2_GCRD = "S - 2*(2*k+1)/(k+1)"

APERY3 = "(x+2)^3*E^2 - (2*x+3)*(17*x^2+51*x+39)*E + (x+1)^3"
APERY3_E = [
    ["S + 1", "(4*k+1)/(2*k+1)", "1", "1"],
    ["(4*k+3)/(k+1)*S", "(2*k+1)/(2*k+3)*S + 1", "2", "(6*k+5)/(2*(k+1))"],
    ["(3*k+2)/(k+1)*S", "(2*k+1)/(2*k+3)*S", "1", "(4*k+3)/(2*(k+1))"],
    ["2*S", "2*(k+1)/(2*k+3)*S", "0", "1"],
]
APERY3_X = [
    ["k", "0", "0", "2*k*S^-1"],
    ["2*k+1", "k", "0", "0"],
    ["0", "2*k+1", "-(k+1)", "0"],
    ["0", "0", "2*(k+1)", "-(k+1)"],
]
APERY3_COLUMN = [
    "(k+2)^3*S^2 + (58*k^4+105*k^3-25*k^2-121*k-45)/(2*k+1)*S - 4*(2*k+1)*(90*k^2+101*k+27)",
    "(k+2)^2*(28*k^3+96*k^2+103*k+34)/((k+1)*(2*k+3))*S^2"
    " - 2*(75*k^4+414*k^3+796*k^2+636*k+177)/(k+1)*S - 8*(37*k+27)*(2*k+1)^2",
    "(k+2)^2*(26*k^3+87*k^2+90*k+28)/((k+1)*(2*k+3))*S^2"
    " - 4*(42*k^4+215*k^3+390*k^2+295*k+77)/(k+1)*S - 16*(10*k+7)*(2*k+1)^2",
    "2*(k+2)^2*(12*k^2+33*k+22)/(2*k+3)*S^2 - 8*(22*k^3+96*k^2+137*k+64)*S - 64*(k+1)*(2*k+1)^2",
]
APERY3_GCRD = "S - 4*(2*k+1)^2/(k+1)^2"

CATALAN_TRANSFORM = "(x+3)*E^2 - 2*(3*x+5)*E + 5*(x+1)"
CATALAN_ASSOCIATED = "(k+3)*S^2 - (3*k+4)*S - 2*(2*k+1)"

FRANEL = "(x+2)^2*E^2 - (7*x^2+21*x+16)*E - 8*(x+1)^2"
FRANEL_E = [
    ["S + 1", "(3*k+1)/(k+1)", "(3*k^2+3*k+1)/(k+1)^2"],
    ["3*S", "(k+1)/(k+2)*S + 1", "(3*k+2)/(k+1)"],
    ["3*S", "(3*k+3)/(k+2)*S", "(k+1)^2/(k+2)^2*S + 1"],
]
FRANEL_X = [["k", "0", "k*S^-1"], ["k+1", "k", "0"], ["0", "k+1", "k"]]
FRANEL_COLUMN = [
    "(k+3)^2*S^3 + (158*k^4+686*k^3+1088*k^2+756*k+199)/(k+1)^2*S^2"
    " + (62*k^4-8*k^3-334*k^2-402*k-141)/(k+1)^2*S - (221*k^2+244*k+67)",
    "(k+3)*(11*k^2+42*k+37)/(k+2)*S^3 + (274*k^4+1598*k^3+3414*k^2+3166*k+1073)/((k+1)*(k+2))*S^2"
    " - (200*k^3+883*k^2+1217*k+531)/(k+1)*S - (85*k+61)*(k+1)",
    "(55*k^4+420*k^3+1168*k^2+1398*k+607)/(k+2)^2*S^3"
    " + (266*k^4+1806*k^3+4568*k^2+5106*k+2129)/(k+2)^2*S^2"
    " - (307*k^2+914*k+670)*S - 14*(k+1)^2",
]

DYCK_MEAN = "(x+2)*E^3 - (8*x+14)*E^2 + (16*x+24)*E"
DYCK_MEAN_ONCE = "(k+3)*S^4 - (4*k+12)*S^3 - 2*k*S^2 + 12*(k+2)*S + 9*(k+1)"
DYCK_MEAN_TWICE = "(k+3)*S^4 + k*S^3 - 2*(4*k+9)*S^2 - 8*k*S + 16*k*S^-1 + 8*(2*k+3)"

HALF_BINOMIAL = "(x+2)*E^2 - 2*(4*x+5)*E + 8*(2*x+1)"
HALF_BINOMIAL_ONCE = "(k+2)*S^2 - (5*k+6)*S + 3*k + 9*k*S^-1"
HALF_BINOMIAL_TWICE = "(k+3)*S^3 - (k+2)*S^2 - 2*(3*k+5)*S + 4*(k+1) + 8*k*S^-1"

NESTED = (
    "-64*(1+x)*(2+x)*(3+x)*(-151-39*x+8*x^2+2*x^3)"
    " + 16*(2+x)*(3+x)*(-3867-2400*x-182*x^2+108*x^3+16*x^4)*E"
    " - 4*(3+x)*(-48214-42707*x-10472*x^2+530*x^3+500*x^4+48*x^5)*E^2"
    " + 2*(-163088-179069*x-66637*x^2-6360*x^3+1822*x^4+480*x^5+32*x^6)*E^3"
    " - (-61566-62939*x-21344*x^2-1644*x^3+580*x^4+132*x^5+8*x^6)*E^4"
    " + (5+x)*(-106-49*x+2*x^2+2*x^3)*E^5"
)


# Reference sequences, computed from their closed forms

def fibonacci(count):
    values = [0, 1]
    while len(values) < count:
        values.append(values[-1] + values[-2])
    return values[:count]


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def franel(n):
    return sum(comb(n, k) ** 3 for k in range(n + 1))


def apery2(n):
    return sum(comb(n, k) ** 2 * comb(n + k, k) for k in range(n + 1))


def apery3(n):
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def order7_first(n):
    return sum(factorial(j) * comb(n, j) ** 2 for j in range(n + 1))


def order7_second(n):
    return sum(2 ** j * comb(n, j + 1) * comb(n, j) for j in range(n))


def half_binomial(n):
    return sum(comb(2 * n, k) for k in range(n + 1))
