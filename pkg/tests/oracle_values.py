"""Reference values from mpmath at 40+ significant digits, frozen so the suite runs without it.

F = Re J_{i nu} / cosh(pi nu / 2), G = Im J_{i nu} / sinh(pi nu / 2), K = Re K_{i nu},
L = pi / (2 sinh(pi nu)) * Re(I_{i nu} + I_{-i nu}). Derivatives by mpmath.diff.
"""

IMAGINARY_ORDER = [
    # (nu, x, F, G, K, L, dF, dG)
    (0.05, 0.5, 0.9370124705860998, -0.44564770282069754, 0.9230066935902481, 21.20283232859663, -0.23725864791794252, 1.4716701852341332),
    (0.5, 1.0, 0.744876790043916, 0.011256242439051945, 0.3840430169050927, 1.9712831167775746, -0.31557307020307734, 0.8498957328833073),
    (0.866, 3.0, -0.20985548238858243, 0.39792944413593884, 0.031131912777446917, 2.3876340951753146, -0.38516714126754953, -0.28084681750671164),
    (1.0, 20.0, 0.16843134442697774, 0.05841603838376026, 5.602785755346476e-10, 12157199.235890115, -0.0627046680917575, 0.16723746055771746),
    (2.958039891549808, 0.3, 0.4379991741683369, -0.14951321689603222, 0.004708135333098622, 0.013202580973487196, 1.474048645183994, 4.3417345630847395),
    (2.958039891549808, 0.99716, -0.44743242583580073, -0.06799818672656002, -1.3302225699356275e-07, -0.014357957952420907, 0.23329094120725896, -1.391427006482371),
    (3.5, 7.0, 0.1688276260936288, -0.22986479743426744, 0.00018453480395762184, 0.04783216045959349, 0.24733147649997494, 0.20193900021495897),
    (7.8, 22.5, 0.00800562206240914, 0.16329990367922514, 1.1692931375199587e-11, 0.2903666613445141, -0.17300873657364094, 0.005234082593355313),
    (0.1, 5.0, -0.1778824867493177, -0.3083143028819764, 0.003687716339868132, 268.27352552038315, 0.32745514099496253, -0.14821498976282013),
    (0.2, 60.0, -0.09145576115988366, 0.04738930399595731, 1.4134304765494428e-27, 2.7626334008884794e+25, -0.04662914189424958, -0.09185432227146918),
    (4.9, 0.01, -0.08138750116629223, 0.3511385276266192, -0.0005010811370249898, -0.0001161363366351459, -172.0581352435718, -39.880041955298175),
    (1.5, 12.0, 0.026398549160137678, -0.22782570148718737, 2.010892971817958e-06, 1180.0385174886121, 0.22869413178551895, 0.03595829041592568),
    (10.0, 40.0, 0.11978248786371307, 0.03304086528100306, 2.4264713497387977e-19, 7593.065068351588, -0.035468542059713205, 0.12308629794078091),
    (0.36, 150.0, -0.0008022298959851121, -0.06514178723528592, 7.33321326100645e-67, 1.0288592947763508e+64, 0.06514501075805425, -0.0005851010348071506),
]

REAL_ORDER = [
    # (nu, x, J, Y, I, K)
    (0.0, 1.0, 0.7651976865579666, 0.08825696421567696, 1.2660658777520084, 0.42102443824070834),
    (0.5, 2.0, 0.5130161365618278, 0.23478571040624846, 2.046236863089055, 0.11993777196806145),
    (1.0, 0.1, 0.049937526036242, -6.4589510947020266, 0.050062526047092694, 9.853844780870606),
    (2.5, 10.0, 0.19665848358181842, -0.16417847961494106, 2028.5127573919356, 2.393132586462789e-05),
    (8.0, 19.0, 0.09294129556816545, 0.16811884585081235, 2993794.7183971484, 8.101770681130336e-09),
    (20.3, 5.0, 1.4766695817810278e-11, -1095721433.4336696, 2.6557008658506532e-11, 900490227.5931237),
    (45.0, 50.0, 0.13228035222445816, 0.10527304111493205, 1240194137932.695, 5.993256090082538e-15),
    (0.25, 250.0, -0.040604814454779946, -0.02996204787635258, 9.45635406711325e+106, 2.1149832016487717e-110),
    (3.0, 0.0001, 2.0833333320312503e-14, -5092958185306.848, 2.083333334635417e-14, 7999999989999.999),
    (60.5, 61.0, 0.12694152193523295, -0.17392131049569148, 8724072801182.775, 6.670836263075856e-16),
    (1.7320508, 3.3, 0.45796166319513787, 0.09274438414399439, 3.6628202177815665, 0.03657654171174373),
]

# Zeros x_n of K_{i tilde_alpha}(x), n = 1, 2, ...; bracketed Illinois solve at 60 digits.
K_ZEROS_1_6 = [0.9971632921714403, 0.33703626039804613, 0.11622998806738473, 0.040173745898752194, 0.013889388058451925, 0.004802173294664856, 0.001660329215713993]  # tilde_alpha = 2.958039891549808
K_ZEROS_3_6 = [0.03729840320690888, 0.00099119222484891, 2.6345819703759553e-05, 7.002701350382827e-07, 1.8613133604839538e-08, 4.94735853004343e-10, 1.3150046061255083e-11]  # tilde_alpha = 0.8660254037844386
K_ZEROS_5_6 = [9.010058428205446e-05, 6.933908668080932e-09, 5.336157349955378e-13, 4.106569126668868e-17, 3.1603097296692214e-21]  # tilde_alpha = 0.33166247903553997

LOGGAMMA = [
    ((0.5+2j), (-2.2226558640532583-0.5925369819770346j)),
    ((3+0.1j), (0.6911730055204169+0.09230410779638508j)),
    ((0.01+7j), (-11.030115192378569+5.840475101679024j)),
    ((12-3j), (17.11555545156836-7.36127850275741j)),
    ((1+0.866j), (-0.5111345051383003-0.3070506049199982j)),
]
