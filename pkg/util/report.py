"""Plain-text tables for command output."""

import re
import unicodedata

WIDE = 2
_FIELD = re.compile(r'\{:([<>^])\}')


def width(text):
    return sum(WIDE if unicodedata.east_asian_width(c) in 'FW' else 1 for c in text)


class Content:
    def __init__(self, *cells):
        self.cells = [str(cell) for cell in cells]

    def sizes(self):
        return [width(cell) for cell in self.cells]


class Header(Content):
    def layout(self, style, sizes):
        return style.render(style.header, self.cells, sizes)


class Data(Content):
    def layout(self, style, sizes):
        return style.render(style.body, self.cells, sizes)


class Line:
    def __init__(self, char='-'):
        self.char = char

    def layout(self, style, sizes):
        return style.render(style.header, [self.char * size for size in sizes], sizes)


class Style:
    """Row templates such as `'{:<}  {:>}'`; every field is padded to its column width."""

    def __init__(self, body, header=None):
        self.body = body
        self.header = header or body
        self.ncols = len(_FIELD.findall(body))

    @staticmethod
    def render(template, cells, sizes):
        fields = iter(zip(cells, sizes))

        def pad(match):
            cell, size = next(fields)
            return f'{cell:{match.group(1)}{size - (width(cell) - len(cell))}}'

        return _FIELD.sub(pad, template).rstrip()


class Table:
    def __init__(self, style):
        self.style = style
        self.rows = []

    def append(self, row):
        self.rows.append(row)
        return self
    __add__ = append

    def __str__(self):
        sizes = [0] * self.style.ncols
        for row in self.rows:
            if isinstance(row, Content):
                sizes = [max(a, b) for a, b in zip(sizes, row.sizes())]
        return '\n'.join(row.layout(self.style, sizes) for row in self.rows)
    __repr__ = __str__
