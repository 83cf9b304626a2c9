from workbench.complex_core import (
    euler_characteristic,
    is_closed_pseudomanifold,
    is_dual_connected,
    looks_like_sphere,
)
from workbench.exceptions import PrismatoidError, ComplexError
from workbench.formats import parse_file
from workbench.prismatoid import Prismatoid
from workbench.reports import certificate_report

from ._base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = "Validate a PRISMATOID or COMPLEX file and print its certificate"

    def add_arguments(self, parser):
        parser.add_argument('path')

    def run(self, *args, **options):
        path = self.resolve(options['path'])
        try:
            value = parse_file(path)
        except (PrismatoidError, ComplexError) as e:
            self.report({"valid": False, "reason": type(e).__name__, "message": str(e)})
            return False
        if isinstance(value, Prismatoid):
            self.report({"valid": True, **certificate_report(value)})
            return True
        sphere = looks_like_sphere(value)
        self.report({
            "valid": True,
            "dim": value.dim,
            "vertices": len(value.vertices),
            "facets": value.facet_count,
            "closed_pseudomanifold": is_closed_pseudomanifold(value),
            "dual_connected": is_dual_connected(value),
            "euler": euler_characteristic(value),
            "sphere_candidate": sphere,
        })
        return sphere
