import os

from setuptools import setup, find_packages


def __readVersion():
    versionPath = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src', 'coordlab', 'version.py')
    namespace = {}
    with open(versionPath) as fileHandle:
        exec(fileHandle.read(), namespace)
    return namespace['version']


install_requires = ['numpy>=1.17']

setup(
    name='coordlab',
    version=__readVersion(),
    description='Simulation and exact analysis of coordination learning in cooperative state games.',
    url="https://github.com/coordlab/coordlab",
    license='MIT',
    install_requires=install_requires,
    extras_require={
        'test': ['pytest'],
    },
    package_dir={'': 'src'},
    packages=find_packages('src', exclude=['*.test', '*.test.*']),
    entry_points={
        'console_scripts': [
            'coordlab = coordlab.utils.coordlabMain:main',
        ],
    })
