#!/usr/bin/env python3
# Copyright 2026 The AltGen Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates the EPUB fixtures under tests/fixtures.

Uses only the Python standard library, so the archives and the defect
manifests do not depend on the code under test. Output is deterministic:
fixed timestamps, fixed entry order. Re-run after editing and commit the
results.

    python3 tests/fixtures/src/make_fixtures.py
"""

import json
import os
import shutil
import struct
import sys
import zipfile
import zlib

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from lang_samples import SAMPLES  # noqa: E402

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.dirname(HERE)
STAMP = (2020, 1, 1, 0, 0, 0)
XHTML_NS = "http://www.w3.org/1999/xhtml"


def png(seed):
    """A valid 2x2 RGB PNG whose pixels depend on seed."""
    r, g, b = (seed * 67) % 256, (seed * 131) % 256, (seed * 199) % 256
    rows = b"".join(b"\x00" + bytes([r, g, b, b, g, r]) for _ in range(2))

    def chunk(tag, data):
        return struct.pack(">I", len(data)) + tag + data + struct.pack(">I", zlib.crc32(tag + data) & 0xFFFFFFFF)

    ihdr = struct.pack(">IIBBBBB", 2, 2, 8, 2, 0, 0, 0)
    return b"\x89PNG\r\n\x1a\n" + chunk(b"IHDR", ihdr) + chunk(b"IDAT", zlib.compress(rows, 9)) + chunk(b"IEND", b"")


def svg_file(title):
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" width="40" height="40" viewBox="0 0 40 40">\n'
        f"  <title>{title}</title>\n"
        '  <rect x="4" y="4" width="32" height="32" fill="#3a6"/>\n'
        "</svg>\n"
    ).encode()


def esc(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def write_zip(path, files, mimetype_method=zipfile.ZIP_STORED):
    """files: list of (name, bytes, method). mimetype goes first."""
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with zipfile.ZipFile(path, "w") as z:
        info = zipfile.ZipInfo("mimetype", STAMP)
        info.compress_type = mimetype_method
        z.writestr(info, b"application/epub+zip")
        for name, data, method in files:
            info = zipfile.ZipInfo(name, STAMP)
            info.compress_type = method
            info.external_attr = (0o40755 << 16) | 0x10 if name.endswith("/") else 0o644 << 16
            z.writestr(info, data)


def container_xml(rootfile):
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<container version="1.0" xmlns="urn:oasis:names:tc:opendocument:xmlns:container">\n'
        "  <rootfiles>\n"
        f'    <rootfile full-path="{rootfile}" media-type="application/oebps-package+xml"/>\n'
        "  </rootfiles>\n"
        "</container>\n"
    ).encode()


class Doc:
    """An XHTML content document that records the issues it plants."""

    def __init__(self, path, title, lang="en"):
        self.path = path
        self.title = title
        self.lang = lang
        self.parts = []
        self.images = 0
        self.issues = []
        self.refs = []  # (index, archive path) of each image
        self.svg = False
        self.well_formed = True

    def base(self):
        return self.path.rsplit("/", 1)[0] + "/" if "/" in self.path else ""

    def raw(self, html):
        self.parts.append(html)

    def h(self, level, text):
        self.parts.append(f"<h{level}>{esc(text)}</h{level}>")

    def p(self, text):
        self.parts.append(f"<p>{esc(text)}</p>")

    def _record(self, alt, role, target_exists):
        i = self.images
        self.images += 1
        decorative = role in ("presentation", "none")
        if not decorative:
            if alt is None:
                self.issues.append(("ImgMissingAlt", "Error", self.path, i))
            elif alt.strip() == "":
                self.issues.append(("ImgEmptyAltNonDecorative", "Warning", self.path, i))
        if not target_exists:
            self.issues.append(("DanglingImageResource", "Error", self.path, i))
        return i

    def img(self, src, alt=None, role=None, exists=True, caption=None):
        i = self._record(alt, role, exists)
        self.refs.append((i, self.base() + src))
        attrs = f'src="{esc(src)}"'
        if alt is not None:
            attrs += f' alt="{esc(alt)}"'
        if role:
            attrs += f' role="{role}"'
        tag = f"<img {attrs}/>"
        if caption is not None:
            tag = f"<figure>{tag}<figcaption>{esc(caption)}</figcaption></figure>"
        self.parts.append(tag)
        return i

    def svg_image(self, href, label=None, exists=True):
        self.svg = True
        i = self._record(label, None, exists)
        self.refs.append((i, self.base() + href))
        attrs = f'xlink:href="{esc(href)}" width="40" height="40"'
        if label is not None:
            attrs += f' aria-label="{esc(label)}"'
        self.parts.append(
            '<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" '
            f'width="40" height="40"><image {attrs}/></svg>'
        )
        return i

    def render(self):
        body = "\n".join(self.parts)
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            "<!DOCTYPE html>\n"
            f'<html xmlns="{XHTML_NS}" xmlns:epub="http://www.idpf.org/2007/ops" '
            f'lang="{self.lang}" xml:lang="{self.lang}">\n'
            f"<head>\n<title>{esc(self.title)}</title>\n</head>\n<body>\n{body}\n</body>\n</html>\n"
        ).encode()


class Book:
    def __init__(self, name, title="A Book", lang="en", access=True, version="3.0", opf_dir="OEBPS"):
        self.name = name
        self.title = title
        self.lang = lang
        self.access = access
        self.version = version
        self.opf_dir = opf_dir
        self.docs = []
        self.resources = []  # (archive path, bytes, media type, method)
        self.extra_entries = []  # unmanifested (archive path, bytes)
        self.package_issues = []
        if title is None:
            self.package_issues.append(("MissingDcTitle", "Error", "package", None))
        if lang is None:
            self.package_issues.append(("MissingDcLanguage", "Error", "package", None))
        elif lang == "":
            pass
        elif not self._well_formed_tag(lang):
            self.package_issues.append(("InvalidLanguageTag", "Warning", "package", None))
        if not access:
            self.package_issues.append(("MissingAccessibilityMetadata", "Warning", "package", None))

    @staticmethod
    def _well_formed_tag(tag):
        import re

        return re.fullmatch(r"[A-Za-z]{2,3}(-[A-Za-z]{4})?(-([A-Za-z]{2}|[0-9]{3}))?", tag) is not None

    def path(self, rel):
        return f"{self.opf_dir}/{rel}" if self.opf_dir else rel

    def doc(self, rel, title, lang=None):
        d = Doc(self.path(rel), title, lang or (self.lang if self.lang and self._well_formed_tag(self.lang) else "en"))
        self.docs.append(d)
        return d

    def image(self, rel, seed, method=zipfile.ZIP_STORED):
        if rel.endswith(".svg"):
            self.resources.append((self.path(rel), svg_file(rel.rsplit("/", 1)[-1][:-4].replace("_", " ")), "image/svg+xml", zipfile.ZIP_DEFLATED))
        else:
            self.resources.append((self.path(rel), png(seed), "image/png", method))

    def issues(self):
        out = list(self.package_issues)
        for d in self.docs:
            out.extend(d.issues)
        return out

    def opf(self):
        rel = lambda p: p[len(self.opf_dir) + 1:] if self.opf_dir else p  # noqa: E731
        meta = []
        if self.title is not None:
            meta.append(f"    <dc:title>{esc(self.title)}</dc:title>")
        if self.lang is not None:
            meta.append(f"    <dc:language>{esc(self.lang)}</dc:language>")
        meta.append(f"    <dc:identifier id=\"uid\">urn:uuid:{self.name}</dc:identifier>")
        if self.version.startswith("3"):
            meta.append('    <meta property="dcterms:modified">2020-01-01T00:00:00Z</meta>')
            if self.access:
                meta.append('    <meta property="schema:accessMode">textual</meta>')
                meta.append('    <meta property="schema:accessMode">visual</meta>')
                meta.append('    <meta property="schema:accessibilityFeature">alternativeText</meta>')
        elif self.access:
            meta.append('    <meta name="schema:accessMode" content="textual"/>')
        items = []
        if self.version.startswith("3"):
            items.append('    <item id="nav" href="nav.xhtml" media-type="application/xhtml+xml" properties="nav"/>')
        else:
            items.append('    <item id="ncx" href="toc.ncx" media-type="application/x-dtbncx+xml"/>')
        for n, d in enumerate(self.docs, 1):
            props = ' properties="svg"' if d.svg and self.version.startswith("3") else ""
            items.append(f'    <item id="c{n}" href="{rel(d.path)}" media-type="application/xhtml+xml"{props}/>')
        for n, (p, _, mt, _) in enumerate(self.resources, 1):
            items.append(f'    <item id="r{n}" href="{rel(p)}" media-type="{mt}"/>')
        spine_attr = ' toc="ncx"' if not self.version.startswith("3") else ""
        spine = [f'    <itemref idref="c{n}"/>' for n in range(1, len(self.docs) + 1)]
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<package xmlns="http://www.idpf.org/2007/opf" version="{self.version}" unique-identifier="uid">\n'
            '  <metadata xmlns:dc="http://purl.org/dc/elements/1.1/">\n'
            + "\n".join(meta)
            + "\n  </metadata>\n  <manifest>\n"
            + "\n".join(items)
            + f"\n  </manifest>\n  <spine{spine_attr}>\n"
            + "\n".join(spine)
            + "\n  </spine>\n</package>\n"
        ).encode()

    def nav(self):
        rel = lambda p: p[len(self.opf_dir) + 1:] if self.opf_dir else p  # noqa: E731
        links = "\n".join(f'<li><a href="{rel(d.path)}">{esc(d.title)}</a></li>' for d in self.docs)
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n<!DOCTYPE html>\n'
            f'<html xmlns="{XHTML_NS}" xmlns:epub="http://www.idpf.org/2007/ops">\n'
            "<head><title>Contents</title></head>\n"
            f'<body>\n<nav epub:type="toc"><ol>\n{links}\n</ol></nav>\n</body>\n</html>\n'
        ).encode()

    def ncx(self):
        points = "\n".join(
            f'    <navPoint id="p{n}" playOrder="{n}"><navLabel><text>{esc(d.title)}</text></navLabel>'
            f'<content src="{d.path[len(self.opf_dir) + 1:]}"/></navPoint>'
            for n, d in enumerate(self.docs, 1)
        )
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            '<ncx xmlns="http://www.daisy.org/z3986/2005/ncx/" version="2005-1">\n'
            f'  <head><meta name="dtb:uid" content="urn:uuid:{self.name}"/></head>\n'
            "  <docTitle><text>Contents</text></docTitle>\n"
            f"  <navMap>\n{points}\n  </navMap>\n</ncx>\n"
        ).encode()

    def write(self, path, directories=False):
        D = zipfile.ZIP_DEFLATED
        files = []
        if directories:
            files.append(("META-INF/", b"", zipfile.ZIP_STORED))
        files.append(("META-INF/container.xml", container_xml(self.path("content.opf")), D))
        if directories and self.opf_dir:
            files.append((self.opf_dir + "/", b"", zipfile.ZIP_STORED))
        files.append((self.path("content.opf"), self.opf(), D))
        if self.version.startswith("3"):
            files.append((self.path("nav.xhtml"), self.nav(), D))
        else:
            files.append((self.path("toc.ncx"), self.ncx(), D))
        for d in self.docs:
            data = d.render()
            if not d.well_formed:
                data = data.replace(b"<br/>", b"<br>")
            files.append((d.path, data, D))
        for p, data, _, method in self.resources:
            files.append((p, data, method))
        for p, data in self.extra_entries:
            files.append((p, data, D))
        write_zip(path, files)

    def manifest(self):
        return [
            {"code": c, "severity": s, "doc": d, "index": i}
            for c, s, d, i in sorted(self.issues(), key=lambda x: (x[2], -1 if x[3] is None else x[3], x[0]))
        ]


# ---- prose used inside fixture chapters ----

EN = [
    "The lighthouse keeper climbed the spiral stairs every evening at dusk, counting the steps out of habit even though he had known the number for thirty years.",
    "Below the cliffs the tide pulled back across the sand, leaving long ribbons of weed and a scattering of crabs that hurried sideways toward the nearest pool.",
    "In the spring the meadow behind the school filled with wild flowers, and the children were allowed to spend their lunch hour chasing butterflies between the tall grasses.",
    "The old map showed a road that no longer existed, winding through a valley that had been flooded when the dam was finished in the early years of the century.",
    "She kept a list of every bird she saw from the kitchen window, and by the end of the winter it had grown to forty names written in a careful, slanting hand.",
]
DE = [
    "Der Leuchtturmwärter stieg jeden Abend in der Dämmerung die Wendeltreppe hinauf und zählte aus Gewohnheit die Stufen, obwohl er ihre Zahl seit dreißig Jahren kannte.",
    "Unterhalb der Klippen zog sich die Flut über den Sand zurück und hinterließ lange Bänder aus Tang und ein paar Krebse, die seitwärts zum nächsten Tümpel eilten.",
    "Im Frühling füllte sich die Wiese hinter der Schule mit wilden Blumen, und die Kinder durften ihre Mittagspause damit verbringen, zwischen den hohen Gräsern Schmetterlinge zu jagen.",
]
FR = [
    "Le gardien du phare montait chaque soir au crépuscule l'escalier en colimaçon, comptant les marches par habitude alors qu'il en connaissait le nombre depuis trente ans.",
    "Au pied des falaises, la marée se retirait sur le sable en laissant de longs rubans d'algues et quelques crabes qui filaient de travers vers la flaque la plus proche.",
    "Au printemps, la prairie derrière l'école se couvrait de fleurs sauvages, et les enfants avaient le droit de passer la pause de midi à courir après les papillons dans les hautes herbes.",
]
ES = [
    "El farero subía cada tarde al anochecer la escalera de caracol y contaba los peldaños por costumbre, aunque conocía su número desde hacía treinta años.",
    "Bajo los acantilados la marea se retiraba por la arena y dejaba largas cintas de algas y unos cuantos cangrejos que corrían de lado hacia la charca más cercana.",
    "En primavera el prado que había detrás de la escuela se llenaba de flores silvestres, y los niños podían pasar la hora de la comida persiguiendo mariposas entre la hierba alta.",
]


def en(n):
    return EN[n % len(EN)]


def seeded_defects():
    """Ten books with 40 Error-level defects in total."""
    books = []

    b = Book("d01-harbour", title="The Harbour", lang="en")
    d = b.doc("ch1.xhtml", "Morning")
    d.h(1, "Morning at the harbour")
    d.p(en(0))
    for k, name in enumerate(["harbour_at_dawn", "fishing_boats", "net_mender", "gulls_on_pier"]):
        b.image(f"images/{name}.png", 10 + k)
        d.img(f"images/{name}.png")
        d.p(en(k + 1))
    books.append(b)

    b = Book("d02-meadow", title="The Meadow", lang=None)
    d = b.doc("ch1.xhtml", "Spring")
    d.h(1, "Spring")
    d.p(en(2))
    for k, name in enumerate(["meadow_flowers", "school_yard", "butterfly"]):
        b.image(f"images/{name}.png", 20 + k)
        d.img(f"images/{name}.png")
        d.p(en(k + 3))
    books.append(b)

    b = Book("d03-birds", title="Birds from the Window", lang="en", access=False)
    d1 = b.doc("text/ch1.xhtml", "Winter birds")
    d2 = b.doc("text/ch2.xhtml", "Spring birds")
    d1.h(1, "Winter")
    d1.p(en(4))
    for k, name in enumerate(["robin", "blackbird", "wren"]):
        b.image(f"images/{name}.png", 30 + k)
        d1.img(f"../images/{name}.png")
    d2.h(1, "Spring")
    d2.p(en(1))
    for k, name in enumerate(["swallow", "starling"]):
        b.image(f"images/{name}.png", 33 + k)
        d2.img(f"../images/{name}.png", caption=f"A {name} on the fence")
    books.append(b)

    b = Book("d04-leuchtturm", title=None, lang=None)
    d = b.doc("kapitel1.xhtml", "Der Leuchtturm", lang="de")
    d.h(1, "Der Leuchtturm")
    for k, text in enumerate(DE):
        d.p(text)
        if k < 2:
            b.image(f"bilder/turm_{k}.png", 40 + k)
            d.img(f"bilder/turm_{k}.png")
    books.append(b)

    b = Book("d05-valley", title=None, lang="en", version="2.0")
    d = b.doc("chapter1.xhtml", "The Valley")
    d.h(1, "The flooded valley")
    d.p(en(3))
    for k, name in enumerate(["old_map", "dam_wall", "drowned_church"]):
        b.image(f"{name}.png", 50 + k)
        d.img(f"{name}.png")
        d.p(en(k))
    books.append(b)

    b = Book("d06-garden", title="A Garden Year", lang="en-GB")
    d1 = b.doc("ch1.xhtml", "Planting")
    d2 = b.doc("ch2.xhtml", "Harvest")
    b.image("img/border.png", 60)
    b.image("img/seedlings.png", 61)
    b.image("img/greenhouse.png", 62)
    b.image("img/apples.png", 63)
    b.image("img/pumpkins.png", 64)
    b.image("img/ornament.png", 65)
    d1.h(1, "Planting")
    d1.img("img/ornament.png", role="presentation")
    d1.p(en(2))
    d1.img("img/seedlings.png")
    d1.img("img/border.png", alt="A low box hedge around the vegetable beds")
    d1.img("img/greenhouse.png")
    d2.h(1, "Harvest")
    d2.p(en(0))
    d2.img("img/apples.png")
    d2.img("img/ornament.png", alt="", role="none")
    d2.img("img/pumpkins.png")
    books.append(b)

    b = Book("d07-lost", title="Lost Things", lang="en")
    d = b.doc("ch1.xhtml", "Lost")
    d.h(1, "Things that went missing")
    d.p(en(4))
    for k, name in enumerate(["key_ring", "umbrella", "glove"]):
        b.image(f"images/{name}.png", 70 + k)
        d.img(f"images/{name}.png")
    d.p(en(1))
    # the only defect stub repair cannot fix
    d.img("images/missing_photo.png", alt="A photograph that was never packaged", exists=False)
    books.append(b)

    b = Book("d08-phare", title="Le Phare", lang=None)
    d = b.doc("ch1.xhtml", "Le phare", lang="fr")
    d.h(1, "Le phare")
    d.p(FR[0])
    b.image("images/phare.png", 80)
    b.image("images/falaise.png", 81)
    b.image("images/schema_du_phare.svg", 82)
    d.img("images/phare.png")
    d.p(FR[1])
    d.img("images/falaise.png")
    d.svg_image("images/schema_du_phare.svg")
    d.p(FR[2])
    books.append(b)

    b = Book("d09-kitchen", title="Kitchen Notes", lang="en")
    d = b.doc("ch1.xhtml", "Bread")
    d.h(1, "Bread")
    d.p(en(0))
    for k, name in enumerate(["flour_bowl", "dough", "proving", "loaf"]):
        b.image(f"images/{name}.png", 90 + k)
        d.img(f"images/{name}.png")
    b.image("images/oven.png", 94)
    d.img("images/oven.png", alt="oven.png")  # inadequate but not an audit error
    d.p(en(3))
    books.append(b)

    b = Book("d10-faro", title=None, lang=None)
    d = b.doc("cap1.xhtml", "El faro", lang="es")
    d.h(1, "El faro")
    d.p(ES[0])
    d.p(ES[1])
    b.image("imagenes/faro.png", 100)
    d.img("imagenes/faro.png")
    d.p(ES[2])
    books.append(b)

    return books


def clean_books():
    books = []
    b = Book("clean-atlas", title="An Atlas of Small Places", lang="en")
    d = b.doc("ch1.xhtml", "Islands")
    d.h(1, "Islands")
    d.p(en(1))
    b.image("images/island.png", 110)
    d.img("images/island.png", alt="A small island with a single tree", caption="The island at low tide")
    b.image("images/rule.png", 111)
    d.img("images/rule.png", alt="", role="presentation")
    books.append(b)

    b = Book("clean-notes", title="Field Notes", lang="de", version="2.0")
    d = b.doc("notes.xhtml", "Notizen", lang="de")
    d.h(1, "Notizen")
    d.p(DE[2])
    books.append(b)
    return books


def sample_book():
    """About fifty entries, directory entries included; clean."""
    b = Book("sample-voyage", title="A Coastal Voyage", lang="en")
    for n in range(1, 21):
        d = b.doc(f"text/chapter{n:02d}.xhtml", f"Chapter {n}")
        d.h(1, f"Chapter {n}")
        d.p(en(n))
        b.image(f"images/plate{n:02d}.png", 200 + n, method=zipfile.ZIP_DEFLATED if n % 2 else zipfile.ZIP_STORED)
        d.img(f"../images/plate{n:02d}.png", alt=f"Plate {n}: a view of the coast from the deck")
        d.p(en(n + 2))
    b.resources.append((b.path("styles/book.css"), b"body { margin: 0 5%; }\nimg { max-width: 100%; }\n", "text/css", zipfile.ZIP_DEFLATED))
    b.extra_entries.append(("OEBPS/images/", b""))
    b.extra_entries.append(("OEBPS/text/", b""))
    return b


def mixed_five():
    """Five seeded issues of five different codes."""
    b = Book("mixed-five", title="Mixed", lang="en_US", access=False)
    d1 = b.doc("ch1.xhtml", "One")
    d2 = b.doc("ch2.xhtml", "Two")
    b.image("images/a.png", 120)
    b.image("images/b.png", 121)
    d1.h(1, "One")
    d1.p(en(0))
    d1.img("images/a.png")
    d1.img("images/b.png", alt="Two gulls over the harbour wall")
    d1.img("images/b.png", alt="")
    d2.h(1, "Two")
    d2.p(en(2))
    d2.img("images/a.png", alt="The same harbour in the rain")
    d2.img("images/c.png", alt="A missing figure", exists=False)
    return b


def malformed_book():
    """A chapter that is not well-formed XML; its images cannot be rewritten."""
    b = Book("malformed-chapter", title="Loose Markup", lang="en")
    d = b.doc("ch1.xhtml", "Loose")
    d.h(1, "Loose")
    d.p(en(1))
    d.raw("<p>first line<br/>second line</p>")
    b.image("images/loose.png", 130)
    d.img("images/loose.png")
    d.well_formed = False
    return b


def minimal(path, mimetype_method=zipfile.ZIP_STORED):
    opf = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<package xmlns="http://www.idpf.org/2007/opf" version="3.0" unique-identifier="uid">\n'
        '  <metadata xmlns:dc="http://purl.org/dc/elements/1.1/">\n'
        "    <dc:title>Minimal</dc:title>\n"
        "    <dc:language>en</dc:language>\n"
        "  </metadata>\n"
        "  <manifest>\n"
        '    <item id="nav" href="nav.xhtml" media-type="application/xhtml+xml" properties="nav"/>\n'
        '    <item id="c1" href="ch1.xhtml" media-type="application/xhtml+xml"/>\n'
        "  </manifest>\n"
        '  <spine>\n    <itemref idref="c1"/>\n  </spine>\n'
        "</package>\n"
    ).encode()
    write_zip(
        path,
        [("META-INF/container.xml", container_xml("content.opf"), zipfile.ZIP_DEFLATED),
         ("content.opf", opf, zipfile.ZIP_DEFLATED)],
        mimetype_method,
    )


def chapter_seven_images():
    d = Doc("OEBPS/ch7.xhtml", "Seven images")
    d.h(1, "Seven images")
    d.p(en(0))
    d.img("images/one.png")
    d.img("images/rule.png", role="presentation")
    d.img("images/two.png", alt="A rowing boat pulled up on the shingle")
    d.p(en(1))
    d.img("images/three.png", alt="")
    d.img("images/rule.png", alt="", role="presentation")
    d.img("images/four.png", caption="Nets drying on the quay")
    d.img("images/five.png")
    return d.render()


def long_context_chapter():
    before = " ".join(EN)  # well over 500 characters
    d = Doc("OEBPS/long.xhtml", "Long")
    d.p(before)
    d.img("images/shore.png")
    d.p(EN[0])
    return d.render(), before


def main():
    defects_dir = os.path.join(OUT, "defects")
    clean_dir = os.path.join(OUT, "clean")
    for p in (defects_dir, clean_dir):
        shutil.rmtree(p, ignore_errors=True)

    manifest = {}
    total_errors = 0
    for b in seeded_defects():
        b.write(os.path.join(defects_dir, b.name + ".epub"))
        manifest[b.name + ".epub"] = b.manifest()
        total_errors += sum(1 for i in b.issues() if i[1] == "Error")
    assert total_errors == 40, total_errors
    with open(os.path.join(OUT, "defects.json"), "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")

    for b in clean_books():
        assert not b.issues(), b.name
        b.write(os.path.join(clean_dir, b.name + ".epub"))

    sample = sample_book()
    assert not sample.issues()
    sample_path = os.path.join(OUT, "sample_book.epub")
    sample.write(sample_path, directories=True)
    with zipfile.ZipFile(sample_path) as z:
        names = z.namelist()
    with open(os.path.join(OUT, "sample_book.listing"), "w") as f:
        f.write("\n".join(names) + "\n")

    mixed = mixed_five()
    mixed.write(os.path.join(OUT, "mixed_five.epub"))
    assert len(mixed.issues()) == 5
    with open(os.path.join(OUT, "mixed_five.json"), "w") as f:
        json.dump(mixed.manifest(), f, indent=2)
        f.write("\n")

    malformed_book().write(os.path.join(OUT, "malformed_chapter.epub"))

    minimal(os.path.join(OUT, "minimal.epub"))
    minimal(os.path.join(OUT, "minimal_deflated_mimetype.epub"), zipfile.ZIP_DEFLATED)

    with open(os.path.join(OUT, "seven_images.xhtml"), "wb") as f:
        f.write(chapter_seven_images())
    data, before = long_context_chapter()
    with open(os.path.join(OUT, "long_context.xhtml"), "wb") as f:
        f.write(data)

    with open(os.path.join(OUT, "lang_samples.json"), "w", encoding="utf-8") as f:
        json.dump([{"lang": k, "text": t} for k, v in SAMPLES.items() for t in v], f, ensure_ascii=False, indent=1)
        f.write("\n")

    print(f"{len(manifest)} defect books, {total_errors} errors; sample book has {len(names)} entries")


if __name__ == "__main__":
    main()
