import math
import warnings

import numpy as np
import pytest

from ruledspace import (ControlNet, GeneratorSpaceError, InvalidFarinError,
                        NearGeneratorWarning, OutsideSegmentError, Quaternion,
                        circumcircle, classify_segment, decasteljau_eval,
                        e4_element_from_dir_point, eval_patch, eval_ruled,
                        eval_sample, eval_strip, fit_circle_3d, height_f0,
                        lift_element, lift_line, line_element_from, proj_equal,
                        sample_mesh, segment_surface_residuals,
                        surface_degree_bound, weights_from_farin)
from ruledspace.lines3 import LineElement3, PluckerLine, line_element_point

rng = np.random.default_rng(99)


def lifted(p, d, height, ell=None, ell2=None):
    """Height-labeled record lifted to P5/P6/P7 coordinates."""
    p, d = np.asarray(p, float), np.asarray(d, float)
    base = np.r_[d, np.cross(p, d) - height * d]
    if ell is None:
        return base
    if ell2 is None:
        return np.r_[base, ell]
    return np.r_[base, ell, ell2]


def simple_net(space="P6", heights=(0.0, 20.0 / 7.0, 0.0)):
    pts = [[0.4, 0.5, 0.0], [1.3, 0.2, -0.9], [-0.2, 1.0, 0.3]]
    dirs = [[0.0, 1.0, 0.0], [-0.45, 0.75, 0.6], [0.9, 0.25, 0.55]]
    controls = []
    for p, d, h in zip(pts, dirs, heights):
        if space == "P5":
            controls.append(lifted(p, d, h))
        elif space == "P6":
            controls.append(lifted(p, d, h, ell=float(np.dot(p, d))))
        else:
            controls.append(lifted(p, d, h, ell=float(np.dot(p, d)), ell2=float(np.dot(p, d)) + 1.0))
    units = [c / np.linalg.norm(c) for c in controls]
    farins = [units[0] + units[1], units[1] + units[2]]
    return ControlNet(space, controls, farins)


class TestWeights:
    def test_two_controls_midpoint(self):
        a = np.array([1.0, 0, 0, 0, 1.0, 0])
        b = np.array([0.0, 1.0, 0, -1.0, 0, 0])
        net = ControlNet("P5", [a, b], [a / np.linalg.norm(a) + b / np.linalg.norm(b)])
        r = weights_from_farin(net)
        assert np.allclose(r[0], a / np.linalg.norm(a))
        assert np.allclose(r[1], b / np.linalg.norm(b))

    def test_three_controls_chain(self):
        net = simple_net()
        r = weights_from_farin(net)
        for i, f in enumerate(net.farins):
            assert proj_equal(r[i] + r[i + 1], f, tol=1e-10)

    def test_rescaled_control_absorbed(self):
        net = simple_net()
        scaled = [np.array(c) for c in net.controls]
        scaled[1] = 7.0 * scaled[1]
        net2 = ControlNet("P6", scaled, net.farins)
        for t in np.linspace(0, 1, 10):
            s1, s2 = eval_strip(net, t), eval_strip(net2, t)
            assert proj_equal(s1.line.as_array(), s2.line.as_array(), tol=1e-10)
            assert np.allclose(s1.point, s2.point, atol=1e-10)

    def test_invalid_farin(self):
        a = np.array([1.0, 0, 0, 0, 1.0, 0])
        b = np.array([0.0, 1.0, 0, -1.0, 0, 0])
        with pytest.raises(InvalidFarinError):
            ControlNet("P5", [a, b], [np.array([0, 0, 1.0, 0, 0, 0.5])])

    def test_outside_segment(self):
        a = np.array([1.0, 0, 0, 0, 1.0, 0])
        b = np.array([0.0, 1.0, 0, -1.0, 0, 0])
        with pytest.raises(OutsideSegmentError):
            ControlNet("P5", [a, b], [2.0 * a - 0.5 * b])


class TestDeCasteljau:
    def test_endpoints(self):
        net = simple_net()
        assert proj_equal(decasteljau_eval(net.reps, 0.0), net.controls[0], tol=1e-12)
        assert proj_equal(decasteljau_eval(net.reps, 1.0), net.controls[-1], tol=1e-12)

    def test_quadratic_midpoint(self):
        reps = [np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, 1.0])]
        out = decasteljau_eval(reps, 0.5)
        assert np.allclose(out, [0.25, 0.5, 0.25])


class TestEvalRuled:
    def test_heights_zero_pencil_net(self):
        # concurrent controls keep the curve on the quadric: heights stay zero
        V = np.array([0.3, -0.6, 0.2])
        controls = [lifted(V, d, 0.0) for d in ([1.0, 0, 0], [0.4, 1.0, 0], [0, 0.3, 1.0])]
        units = [c / np.linalg.norm(c) for c in controls]
        net = ControlNet("P5", controls, [units[0] + units[1], units[1] + units[2]])
        for t in np.linspace(0, 1, 9):
            assert abs(eval_ruled(net, t).height) < 1e-12

    def test_generic_heights_vanish_at_endpoints(self):
        net = simple_net("P5", heights=(0.0, 0.0, 0.0))
        assert abs(eval_ruled(net, 0.0).height) < 1e-12
        assert abs(eval_ruled(net, 1.0).height) < 1e-12

    def test_endpoint_lines(self):
        net = simple_net("P5")
        s0 = eval_ruled(net, 0.0)
        # the start ruling is the projection of the lifted first control
        from ruledspace import E4Line, project_pi
        line, h = project_pi(E4Line.from_p5(net.controls[0]))
        assert proj_equal(s0.line.as_array(), line.as_array(), tol=1e-10)
        assert s0.height == pytest.approx(h, abs=1e-12)

    def test_single_segment_on_interpolation_surface(self):
        from ruledspace import E4Line
        a = lifted([0.2, -0.4, 1.0], [0.0, 1.0, 0.0], 0.4)
        b = lifted([1.0, 0.5, -0.3], [0.3, 0.2, 0.95], -0.7)
        la, lb = E4Line.from_p5(a), E4Line.from_p5(b)
        assert classify_segment(la, lb).tag == "generic_skew"
        net = ControlNet("P5", [a, b], [a / np.linalg.norm(a) + b / np.linalg.norm(b)])
        pts = []
        for t in np.linspace(0.05, 0.95, 15):
            s = eval_ruled(net, t)
            d = s.line.dir / np.linalg.norm(s.line.dir)
            p0 = s.line.point_closest_to_origin()
            for u in (-1.0, 0.8):
                p3 = p0 + u * d
                pts.append(np.r_[s.height, p3])
        res = segment_surface_residuals(la, lb, np.asarray(pts))
        assert res.max() < 1e-9

    def test_concurrent_segment_is_pencil(self):
        V = np.array([0.4, -0.2, 0.7])
        d1, d2 = np.array([1.0, 0.3, 0.0]), np.array([0.2, 1.0, -0.5])
        a = lifted(V, d1, 0.0)
        b = lifted(V, d2, 0.0)
        net = ControlNet("P5", [a, b], [a / np.linalg.norm(a) + b / np.linalg.norm(b)])
        for t in np.linspace(0, 1, 12):
            s = eval_ruled(net, t)
            assert s.line.contains_point(V, tol=1e-10)
            assert abs(s.height) < 1e-12


class TestEvalStrip:
    def test_endpoint_elements_reproduced(self):
        net = simple_net("P6")
        for t, idx in ((0.0, 0), (1.0, -1)):
            s = eval_strip(net, t)
            c = net.controls[idx]
            from ruledspace import E4LineElement, project_pi
            elem, h = project_pi(E4LineElement.from_p6(c))
            assert proj_equal(s.line.as_array(), elem.line.as_array(), tol=1e-10)
            assert np.allclose(s.point, line_element_point(elem), atol=1e-10)
            assert s.height == pytest.approx(h, abs=1e-12)

    def test_concurrent_elements_circle_through_vertex(self):
        V = np.array([0.5, -0.3, 0.8])
        d1 = np.array([1.0, 0.2, -0.5])
        d2 = np.array([0.3, 1.0, 0.4])
        P1, P2 = V + 1.7 * d1, V - 2.2 * d2
        a = np.r_[line_element_from(P1, d1).as_array()]
        b = np.r_[line_element_from(P2, d2).as_array()]
        net = ControlNet("P6", [a, b], [a / np.linalg.norm(a) + b / np.linalg.norm(b)])
        pts = [eval_strip(net, t).point for t in np.linspace(0, 1, 30)]
        center, radius = circumcircle(V, P1, P2)
        for p in pts:
            assert np.linalg.norm(p - center) == pytest.approx(radius, abs=1e-9)
        # vertex is on the curve (at the parameter where the pencil sweeps it)
        *_, res = fit_circle_3d(np.asarray(pts))
        assert res < 1e-9

    def test_identical_carrier(self):
        d = np.array([0.3, 1.0, -0.2])
        p = np.array([1.0, 0.0, 2.0])
        line = line_element_from(p, d)
        a = np.r_[line.as_array()[:6], 0.4]
        b = np.r_[line.as_array()[:6], -1.1]
        net = ControlNet("P6", [a, b], [a / np.linalg.norm(a) + b / np.linalg.norm(b)])
        for t in np.linspace(0, 1, 9):
            s = eval_strip(net, t)
            assert proj_equal(s.line.as_array(), line.as_array()[:6], tol=1e-10)
            assert s.line.contains_point(s.point, tol=1e-9)


class TestEvalPatch:
    def test_equal_scalars_degenerate_to_strip(self):
        net7 = simple_net("P7")
        # duplicate the first scalar and keep the same weight chain in both nets
        controls7 = [np.r_[c[:7], c[6]] for c in net7.controls]
        units = [c / np.linalg.norm(c) for c in controls7]
        net = ControlNet("P7", controls7, [units[0] + units[1], units[1] + units[2]])
        net6 = ControlNet("P6", [c[:7] for c in controls7],
                          [f[:7] for f in net.farins])
        for t in np.linspace(0, 1, 7):
            s7 = eval_patch(net, t)
            s6 = eval_strip(net6, t)
            assert np.allclose(s7.boundary[0], s7.boundary[1], atol=1e-10)
            assert np.allclose(s7.boundary[0], s6.point, atol=1e-9)

    def test_endpoint_boundaries(self):
        net = simple_net("P7")
        s = eval_patch(net, 0.0)
        c = net.controls[0]
        from ruledspace import E4LineElement, project_pi
        e1, _ = project_pi(E4LineElement.from_p6(c[:7]))
        e2, _ = project_pi(E4LineElement.from_p6(np.r_[c[:6], c[7]]))
        assert np.allclose(s.boundary[0], line_element_point(e1), atol=1e-10)
        assert np.allclose(s.boundary[1], line_element_point(e2), atol=1e-10)

    def test_constant_width_pencil(self):
        # boundary scalars differing by a constant on a common-carrier family keep
        # the boundary points equidistant along every ruling
        d = np.array([0.0, 1.0, 0.0])
        width = 0.75
        a = np.r_[lifted([0, 0, 0], d, 0.0), 0.0, width]
        b = np.r_[lifted([2.0, 0, 0], d, 0.0), 0.3, 0.3 + width]
        net = ControlNet("P7", [a, b], [a / np.linalg.norm(a) + b / np.linalg.norm(b)])
        for t in np.linspace(0, 1, 9):
            s = eval_patch(net, t)
            gap = np.linalg.norm(s.boundary[1] - s.boundary[0])
            assert gap == pytest.approx(abs(s.ell2 - s.ell) / np.linalg.norm(s.line.dir),
                                        abs=1e-9)


class TestGauge:
    @pytest.mark.parametrize("which,scale", [(0, 3.0), (1, -2.0), (2, 0.25),
                                             ("farin0", 5.0), ("farin1", -1.5)])
    def test_rescaling_changes_nothing(self, which, scale):
        net = simple_net("P6")
        controls = [np.array(c) for c in net.controls]
        farins = [np.array(f) for f in net.farins]
        if isinstance(which, int):
            controls[which] = scale * controls[which]
        elif which == "farin0":
            farins[0] = scale * farins[0]
        else:
            farins[1] = scale * farins[1]
        net2 = ControlNet("P6", controls, farins)
        for t in np.linspace(0, 1, 10):
            s1, s2 = eval_strip(net, t), eval_strip(net2, t)
            assert proj_equal(s1.line.as_array(), s2.line.as_array(), tol=1e-10)
            assert np.allclose(s1.point, s2.point, atol=1e-9)
            assert s1.height == pytest.approx(s2.height, abs=1e-10)


class TestReduction:
    def test_p6_zero_ell_matches_p5(self):
        net6 = simple_net("P6")
        controls6 = [np.r_[c[:6], 0.0] for c in net6.controls]
        units = [c / np.linalg.norm(c) for c in controls6]
        net6z = ControlNet("P6", controls6, [units[0] + units[1], units[1] + units[2]])
        controls5 = [c[:6] for c in controls6]
        units5 = [c / np.linalg.norm(c) for c in controls5]
        net5 = ControlNet("P5", controls5, [units5[0] + units5[1], units5[1] + units5[2]])
        for t in np.linspace(0, 1, 10):
            s6, s5 = eval_strip(net6z, t), eval_ruled(net5, t)
            assert proj_equal(s6.line.as_array(), s5.line.as_array(), tol=1e-11)
            assert s6.height == pytest.approx(s5.height, abs=1e-12)


class TestDegree:
    def test_linear_net(self):
        a = lifted([0.2, -0.4, 1.0], [0.0, 1.0, 0.0], 0.4, ell=0.3)
        b = lifted([1.0, 0.5, -0.3], [0.3, 0.2, 0.95], -0.7, ell=-0.6)
        net = ControlNet("P6", [a, b], [a / np.linalg.norm(a) + b / np.linalg.norm(b)])
        assert surface_degree_bound(net) <= 2

    def test_quadratic_net_quartic(self):
        net = simple_net("P6")
        assert surface_degree_bound(net) <= 4

    def test_common_carrier_keeps_degree(self):
        d = np.array([0.3, 1.0, -0.2])
        p = np.array([1.0, 0.0, 2.0])
        base = line_element_from(p, d).as_array()
        controls = [np.r_[base[:6], e] for e in (0.4, -1.1, 2.0)]
        units = [c / np.linalg.norm(c) for c in controls]
        net = ControlNet("P6", controls, [units[0] + units[1], units[1] + units[2]])
        assert surface_degree_bound(net) <= 2


class TestMesh:
    def test_pencil_mesh_planar(self):
        V = np.array([0.0, 0.0, 0.0])
        a = lifted(V, [1.0, 0, 0], 0.0)
        b = lifted(V, [0.0, 1.0, 0], 0.0)
        net = ControlNet("P5", [a, b], [a + b])
        mesh = sample_mesh(net, 2, 5, (-1, 1))
        pts = mesh.vertices.reshape(-1, 3)
        assert np.abs(pts[:, 2]).max() < 1e-12

    def test_heights_interpolate(self):
        net = simple_net("P6")
        mesh = sample_mesh(net, 21, 5, (-1, 1))
        assert mesh.heights[0] == pytest.approx(0.0, abs=1e-12)
        assert mesh.heights[-1] == pytest.approx(0.0, abs=1e-12)
        assert mesh.heights.max() > 0.5  # influence of the 20/7 control

    def test_mesh_lift_on_interpolation_surface(self):
        from ruledspace import E4Line
        a = lifted([0.2, -0.4, 1.0], [0.0, 1.0, 0.0], 0.4)
        b = lifted([1.0, 0.5, -0.3], [0.3, 0.2, 0.95], -0.7)
        la, lb = E4Line.from_p5(a), E4Line.from_p5(b)
        net = ControlNet("P5", [a, b], [a / np.linalg.norm(a) + b / np.linalg.norm(b)])
        mesh = sample_mesh(net, 9, 5, (-2, 2))
        pts = []
        for i in range(9):
            for j in range(5):
                pts.append(np.r_[mesh.heights[i], mesh.vertices[i, j]])
        assert segment_surface_residuals(la, lb, np.asarray(pts)).max() < 1e-9

    def test_patch_clamps(self):
        net = simple_net("P7")
        mesh = sample_mesh(net, 7, 6, (-50.0, 50.0))
        lo, hi = mesh.boundaries
        for i in range(7):
            seg = np.linalg.norm(hi[i] - lo[i])
            for j in range(6):
                d1 = np.linalg.norm(mesh.vertices[i, j] - lo[i])
                d2 = np.linalg.norm(mesh.vertices[i, j] - hi[i])
                assert d1 <= seg + 1e-9 and d2 <= seg + 1e-9


def _puncture_net():
    """Cubic net whose direction field vanishes at t = 1/2 (moments do not)."""
    dirs = [np.array([1.0, 0, 0]), np.array([0, 1.0, 0]),
            np.array([-1.0, 0, 0]), np.array([0, -1.0, 0])]
    mom = np.array([0.0, 0.0, 1.0])
    reps = [np.r_[3.0 * dirs[0], mom], np.r_[dirs[1], mom],
            np.r_[dirs[2], mom], np.r_[3.0 * dirs[3], mom]]
    farins = [reps[i] + reps[i + 1] for i in range(3)]
    return ControlNet("P5", reps, farins)


class TestGeneratorHandling:
    def test_generator_puncture_raises_with_t(self):
        net = _puncture_net()
        with pytest.raises(GeneratorSpaceError) as err:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NearGeneratorWarning)
                eval_ruled(net, 0.5)
        assert err.value.t == pytest.approx(0.5)
        with pytest.raises(GeneratorSpaceError):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NearGeneratorWarning)
                sample_mesh(net, 9, 3, (-1, 1))

    def test_near_generator_warns(self):
        net = _puncture_net()
        with pytest.warns(NearGeneratorWarning):
            eval_ruled(net, 0.5 + 1e-7)
