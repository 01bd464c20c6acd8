import os

import KSconstants
from util import document
from util import report
from util import splitting
from util.cardinal import ONE
from util.command import Group, CheckFailedError, argument, command


def _out_dir(args):
    return args.out_dir or KSconstants.OUTPUT_DIR


_OUT_DIR = argument('--out-dir', help='output directory (default: KSPLIT_OUTPUT_DIR or data/out)')


class Transform(Group):
    @command(brief='Split a maximal node so every new maximum has local d = 1',
             arguments=[argument('file', help='poset document'),
                        argument('node', help='maximal node to split'),
                        _OUT_DIR])
    def split(self, args):
        """Writes upper.json and map.json."""
        poset = document.read_poset(args.file)
        if poset.maximal_count() == ONE:
            cert = splitting.split_at(poset, args.node)
        else:
            cert = splitting.split_maximal(poset, args.node)
        out = _out_dir(args)
        document.write_text(os.path.join(out, 'upper.json'), document.serialize(cert.upper))
        document.write_text(os.path.join(out, 'map.json'), document.serialize_certificate(cert))
        print(f'split {args.node} into {",".join(sorted(cert.fiber))}')

    @command(brief='Compute a simplifying chain',
             arguments=[argument('file', help='poset document'), _OUT_DIR])
    def simplify(self, args):
        """Writes stage_NN.json for every stage (stage_00 is the input), map_NN.json for the
        certificate producing stage NN, and summary.txt."""
        poset = document.read_poset(args.file)
        chain = splitting.simplify(poset)
        out = _out_dir(args)
        stages = list(reversed(chain.stages))
        for i, stage in enumerate(stages):
            document.write_text(os.path.join(out, f'stage_{i:02}.json'), document.serialize(stage.poset))
            if stage.certificate is not None:
                document.write_text(os.path.join(out, f'map_{i:02}.json'),
                                    document.serialize_certificate(stage.certificate))

        t = report.Table(report.Style('{:>}  {:<}  {:>}'))
        t += report.Header('stage', 'split', 'e')
        t += report.Line()
        for i, (stage, e) in enumerate(zip(stages, chain.e_sequence)):
            node = stage.certificate.split_node if stage.certificate is not None else '-'
            t += report.Data(f'{i:02}', node, e)
        summary = (f'length {chain.length}\n'
                   f'e-sequence {" ".join(map(str, chain.e_sequence))}\n\n{t}\n')
        document.write_text(os.path.join(out, 'summary.txt'), summary)
        print(summary, end='')

    @command(brief='Glue maximal nodes into one',
             arguments=[argument('file', help='poset document'),
                        argument('nodes', help='comma separated maximal nodes'),
                        argument('--label', help='label of the glued node'),
                        _OUT_DIR])
    def glue(self, args):
        """Writes glued.json and map.json."""
        poset = document.read_poset(args.file)
        fiber = [node for node in args.nodes.split(',') if node]
        quotient, cert = splitting.glue(poset, fiber, label=args.label)
        out = _out_dir(args)
        document.write_text(os.path.join(out, 'glued.json'), document.serialize(quotient))
        document.write_text(os.path.join(out, 'map.json'), document.serialize_certificate(cert))
        print(f'glued {",".join(sorted(cert.fiber))} into {cert.split_node}')

    @command('verify-map', brief='Verify a splitting certificate',
             arguments=[argument('upper', help='upper poset document'),
                        argument('lower', help='lower poset document'),
                        argument('map', help='certificate document')])
    def verify_map(self, args):
        upper = document.read_poset(args.upper)
        lower = document.read_poset(args.lower)
        cert = document.read_certificate(upper, lower, args.map)
        violations = splitting.verify_splitting(cert)
        if violations:
            raise CheckFailedError(violations)
        violations = splitting.check_d_preservation(cert)
        if violations:
            raise CheckFailedError(violations)
        print(f'ok: splitting at {cert.split_node} with fiber {",".join(sorted(cert.fiber))}')


def setup(registry):
    registry.add_group(Transform(registry))
