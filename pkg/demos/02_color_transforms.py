"""
============================
Color matrices on image data
============================

Inversion maps each channel ``v`` to ``1 - v``; the extreme red-shift keeps
only red. Both are affine matrices on normalized RGB and compose like any
other affine map.
"""
from pathlib import Path

from darken import Color, TransformScheme, apply, compose, inversion_matrix, redshift_matrix, save_image
from darken.transform import identity_matrix
from darken.synth import app_screenshot

out = Path("demo_output")
out.mkdir(exist_ok=True)

inv, red = inversion_matrix(), redshift_matrix()
print("invert  (100,150,200) ->", inv(Color(100, 150, 200)))
print("redshift(80,1,2)      ->", red(Color(80, 1, 2)))

###############################################################################
# Combined scheme: invert first, then red-shift.
both = compose(red, inv)
print("combined linear part:\n", both.linear, "\noffset:", both.offset)
print("combined (55,0,0)     ->", both(Color(55, 0, 0)))
print("invert twice is identity:", compose(inv, inv) == identity_matrix())

###############################################################################
# Render one screen under every scheme.
screen = app_screenshot(3)
for scheme in TransformScheme:
    m = {TransformScheme.DEFAULT: None, TransformScheme.INVERT: inv,
         TransformScheme.REDSHIFT: red, TransformScheme.INVERT_REDSHIFT: both}[scheme]
    img = screen if m is None else apply(screen, m)
    save_image(img, out / f"screen_{scheme.value}.png")
print("wrote", sorted(p.name for p in out.glob("screen_*.png")))
